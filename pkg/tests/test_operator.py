"""The fractional operator, its normalized companion, and closed forms."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from fracops.errors import DomainError
from fracops.fracdiff import (
    OperatorParams,
    apply_operator,
    closed_form_spec,
    monomial_transform,
    phi_multiplier,
    theta_fox_wright_spec,
    theta_front_constant,
    theta_hadamard,
    theta_multiplier_apply,
    theta_normalize,
)
from fracops.series import PowerSeries, exp_times_z_series, koebe_series, kummer_series
from fracops.special import EvalStatus, fox_wright_coefficient, log_gamma


# ---------------------------------------------------------------------------
# parameter window


@pytest.mark.parametrize(
    "beta,tau,gamma,fragment",
    [
        (0.0, 0.5, 0.0, "0 < beta <= 1"),
        (1.5, 0.5, 0.0, "0 < beta <= 1"),
        (0.5, 0.0, 0.0, "0 < tau <= 1"),
        (0.2, 0.9, 0.0, "0 <= beta - tau"),
        (0.5, 0.5, -1.0, "gamma >= 0"),
    ],
)
def test_window_violations_name_the_inequality(beta, tau, gamma, fragment):
    with pytest.raises(DomainError, match=fragment.replace("<", "<")) as err:
        OperatorParams(beta, tau, gamma)
    assert fragment in str(err.value)


def test_window_edges_admitted():
    OperatorParams(1.0, 1.0, 0.0)
    OperatorParams(1.0, 0.001, 5.0)  # beta - tau = 0.999 < 1
    p = OperatorParams(0.75, 0.25, 3.0)
    assert p.diff == -0.5
    assert_allclose(p.shift, 0.5 * 3.0)
    a, b = p.jacobi_exponents
    assert a == -0.5
    assert_allclose(b, -0.0625)
    assert -1.0 < a <= 0.0 and -1.0 < b <= 0.0


# ---------------------------------------------------------------------------
# monomial images


def test_monomial_image_worked_example():
    img = monomial_transform(OperatorParams(1.0, 0.5, 0.0), 1.0)
    assert abs(img.coefficient - 2.0) < 1e-12
    assert img.exponent == 1.0


def test_monomial_gamma_zero_reduction():
    """At gamma = 0 the coefficient is Gamma(u+beta)Gamma(tau)/(Gamma(u+tau)Gamma(beta))."""
    rng = np.random.default_rng(21)
    for _ in range(60):
        beta = rng.uniform(0.1, 1.0)
        tau = rng.uniform(max(0.05, beta - 0.9), beta)
        u = rng.uniform(0.0, 6.0)
        p = OperatorParams(beta, tau, 0.0)
        img = monomial_transform(p, u)
        want = math.exp(
            log_gamma(u + beta) + log_gamma(tau) - log_gamma(u + tau) - log_gamma(beta)
        )
        assert_allclose(img.coefficient, want, rtol=1e-12)
        assert img.exponent == u  # shift vanishes with gamma


def test_monomial_tau_equals_beta_is_exact_unity():
    """No rounding at all: the log-Gamma differences cancel bit-for-bit."""
    for beta, gamma in [(0.3, 0.0), (0.55, 1.7), (1.0, 4.2)]:
        p = OperatorParams(beta, beta, gamma)
        for u in range(8):
            img = monomial_transform(p, float(u))
            assert img.coefficient == 1.0
            assert img.exponent == gamma + u


def test_monomial_rejects_negative_power():
    with pytest.raises(DomainError):
        monomial_transform(OperatorParams(0.5, 0.3, 1.0), -0.5)


def test_apply_operator_consistent_with_monomials():
    p = OperatorParams(0.8, 0.35, 2.1)
    f = PowerSeries([0.5, 1.0, -0.25 + 0.1j, 0.0, 2.0])
    image = apply_operator(p, f)
    assert image.prefactor_power == p.shift
    for u in range(5):
        want = f.coeffs[u] * monomial_transform(p, u).coefficient
        assert_allclose(image.series.coeffs[u], want, rtol=1e-15)


def test_operator_image_evaluate():
    p = OperatorParams(0.8, 0.35, 2.1)
    f = koebe_series(1.0, 30)
    image = apply_operator(p, f)
    z = 0.2 - 0.3j
    direct = sum(
        f.coeffs[u] * monomial_transform(p, u).coefficient * z ** (p.shift + u)
        for u in range(f.order + 1)
    )
    assert_allclose(image.evaluate(z), direct, rtol=1e-13)
    assert image.evaluate(0.0) == 0.0


# ---------------------------------------------------------------------------
# normalized companion


def test_phi_multiplier_pinned_at_one():
    for beta, tau, gamma in [(0.5, 0.25, 0.0), (0.9, 0.2, 3.3), (1.0, 1.0, 2.0)]:
        assert phi_multiplier(OperatorParams(beta, tau, gamma), 1) == 1.0


def test_phi_multiplier_tau_equals_beta_identity():
    p = OperatorParams(0.6, 0.6, 2.5)
    for k in range(1, 40):
        assert phi_multiplier(p, k) == 1.0


def test_front_constant_is_one_at_tau_equals_beta():
    assert theta_front_constant(OperatorParams(0.4, 0.4, 1.9)) == 1.0


def test_theta_normalize_requires_normalized_input():
    p = OperatorParams(0.5, 0.3, 0.0)
    with pytest.raises(DomainError):
        theta_normalize(p, PowerSeries([0.0, 2.0]))
    with pytest.raises(DomainError):
        theta_multiplier_apply(p, PowerSeries([1.0, 1.0]))


def test_theta_multiplier_apply_is_linear():
    p = OperatorParams(0.7, 0.2, 1.4)
    # disjoint supports make the linearity check exact in floating point
    f = PowerSeries([0.0, 1.0, 0.5, 0.0])
    g = PowerSeries([0.0, 0.0, 0.0, 3.0 - 1.0j])
    lhs = theta_multiplier_apply(p, f + g)
    rhs = theta_multiplier_apply(p, f) + theta_multiplier_apply(p, g)
    assert np.array_equal(lhs.coeffs, rhs.coeffs)
    # overlapping supports distribute only up to roundoff
    h = PowerSeries([0.0, 0.25j, -2.0, 1.0])
    assert_allclose(
        theta_multiplier_apply(p, f + h).coeffs,
        (theta_multiplier_apply(p, f) + theta_multiplier_apply(p, h)).coeffs,
        rtol=1e-15, atol=1e-15,
    )


def test_theta_hadamard_matches_multiplier_route():
    """Kernel coefficient times front constant reproduces Phi(kappa)."""
    rng = np.random.default_rng(2)
    for _ in range(10):
        beta = rng.uniform(0.1, 1.0)
        tau = rng.uniform(max(0.05, beta - 0.9), beta)
        gamma = rng.uniform(0.0, 3.0)
        p = OperatorParams(beta, tau, gamma)
        c = np.zeros(33, dtype=np.complex128)
        c[1] = 1.0
        c[2:] = (rng.normal(size=31) + 1j * rng.normal(size=31)) / np.arange(2, 33)
        f = PowerSeries(c)
        a = theta_normalize(p, f)
        b = theta_hadamard(p, f)
        assert np.max(np.abs(a.coeffs - b.coeffs)) <= 1e-12


def test_theta_kernel_spec_shape():
    p = OperatorParams(0.65, 0.3, 1.6)
    constant, spec = theta_fox_wright_spec(p)
    assert len(spec.upper) == 2 and len(spec.lower) == 1
    # (constant * kernel at kappa-1) is Phi(kappa)
    for k in (1, 2, 7):
        assert_allclose(
            constant * fox_wright_coefficient(spec, k - 1),
            phi_multiplier(p, k),
            rtol=1e-13,
        )


# ---------------------------------------------------------------------------
# closed forms


def test_closed_form_requires_known_kind_and_params():
    p = OperatorParams(0.5, 0.25, 1.0)
    with pytest.raises(DomainError):
        closed_form_spec(p, "mystery")
    with pytest.raises(DomainError):
        closed_form_spec(p, "koebe", alpha=0.5)  # needs alpha >= 1
    with pytest.raises(DomainError):
        closed_form_spec(p, "kummer", alpha=1.0)  # lam missing
    with pytest.raises(DomainError):
        closed_form_spec(p, "hurwitz_lerch", alpha=1.0, lam=1.0, rho=1.0, s=1.0, a=0.0)


def test_closed_form_koebe_matches_termwise_image():
    p = OperatorParams(0.7, 0.45, 1.3)
    form = closed_form_spec(p, "koebe", alpha=2.0)
    image = apply_operator(p, koebe_series(2.0, 400))
    for z in (0.3, -0.25, 0.1 + 0.4j):
        assert_allclose(form.evaluate(z), image.evaluate(z), rtol=1e-10)


def test_closed_form_kummer_degenerates_to_exp():
    p = OperatorParams(0.8, 0.15, 0.4)
    k = closed_form_spec(p, "kummer", alpha=1.3, lam=1.3)
    e = closed_form_spec(p, "exp_times_z")
    for z in (0.45, -0.2 + 0.2j):
        assert_allclose(k.evaluate(z), e.evaluate(z), rtol=1e-10)


def test_closed_form_inner_sum_reports_status():
    p = OperatorParams(0.7, 0.45, 1.3)
    form = closed_form_spec(p, "exp_times_z")
    out = form.inner_sum(0.2)
    assert out.status is EvalStatus.CONVERGED
    with pytest.raises(DomainError):
        # truncating the budget to almost nothing must fail loudly, not
        # return the partial sum
        form.evaluate(0.9, max_terms=3)


def test_closed_form_tau_equals_beta_recovers_input():
    """At tau = beta the image is z^gamma f(z); check through the series."""
    p = OperatorParams(0.5, 0.5, 2.0)
    form = closed_form_spec(p, "kummer", alpha=1.2, lam=0.8)
    f = kummer_series(1.2, 0.8, 60)
    for z in (0.3, -0.4):
        assert_allclose(form.evaluate(z), z**p.gamma * f.evaluate(z), rtol=1e-12)


def test_closed_form_exp_series_agreement():
    p = OperatorParams(0.9, 0.6, 0.0)
    form = closed_form_spec(p, "exp_times_z")
    image = apply_operator(p, exp_times_z_series(40))
    z = -0.35 + 0.1j
    assert_allclose(form.evaluate(z), image.evaluate(z), rtol=1e-11)
