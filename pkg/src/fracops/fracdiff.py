"""The three-parameter fractional differential operator on power series.

Implements the coefficientwise action of the operator T^{beta,tau,gamma}
on truncated power series, its normalized companion Theta (multiplier
sequence Phi), the Fox-Wright/Hadamard representation of Theta, and
closed-form images for the stock input functions. All Gamma ratios are
evaluated as exponentials of log-Gamma differences.

Throughout, expressions of the form 1 - beta + tau are evaluated as
1 + (tau - beta), so that tau == beta cancels exactly in floating point
and the operator degenerates to multiplication by z^gamma with exactly
unchanged coefficients.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, PoleHitError
from .series import PowerSeries
from .special import (
    EvalOutcome,
    EvalStatus,
    FoxWrightSpec,
    MAX_TERMS_DEFAULT,
    SeriesMonitor,
    beta_fn,
    fox_wright_coefficient,
    fox_wright_eval,
    log_gamma,
    pochhammer,
)


@dataclass(frozen=True)
class OperatorParams:
    """Validated parameter triple (beta, tau, gamma).

    The admissible window is 0 < beta <= 1, 0 < tau <= 1,
    0 <= beta - tau < 1 and gamma >= 0; construction fails with a
    DomainError naming the violated inequality.
    """

    beta: float
    tau: float
    gamma: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "tau", float(self.tau))
        object.__setattr__(self, "gamma", float(self.gamma))
        if not 0.0 < self.beta <= 1.0:
            raise DomainError(f"parameter window violated: 0 < beta <= 1 (beta = {self.beta})")
        if not 0.0 < self.tau <= 1.0:
            raise DomainError(f"parameter window violated: 0 < tau <= 1 (tau = {self.tau})")
        if self.beta - self.tau < 0.0:
            raise DomainError(
                f"parameter window violated: 0 <= beta - tau (beta - tau = {self.beta - self.tau})"
            )
        if self.beta - self.tau >= 1.0:
            raise DomainError(
                f"parameter window violated: beta - tau < 1 (beta - tau = {self.beta - self.tau})"
            )
        if self.gamma < 0.0:
            raise DomainError(f"parameter window violated: gamma >= 0 (gamma = {self.gamma})")

    @property
    def diff(self) -> float:
        """tau - beta, the (non-positive) fractional order difference."""
        return self.tau - self.beta

    @property
    def shift(self) -> float:
        """Prefactor exponent (1 - beta + tau) * gamma carried by every image."""
        return (1.0 + self.diff) * self.gamma

    @property
    def jacobi_exponents(self) -> tuple:
        """(alpha', beta') = (tau - beta, (beta - 1)/(gamma + 1)), both in (-1, 0]."""
        return (self.diff, (self.beta - 1.0) / (self.gamma + 1.0))

    def to_json_dict(self) -> dict:
        return {"beta": self.beta, "tau": self.tau, "gamma": self.gamma}


@dataclass(frozen=True)
class MonomialImage:
    """Image of z^upsilon: coefficient * z^exponent."""

    coefficient: float
    exponent: float

    def evaluate(self, z) -> complex:
        return self.coefficient * complex(z) ** self.exponent


def _x_argument(p: OperatorParams, upsilon: float) -> float:
    """The recurring Gamma argument X = (upsilon + beta - 1)/(gamma + 1) + 1.

    Written as ((upsilon - 1) + beta)/(gamma + 1) + 1 so upsilon = 1 gives
    exactly beta/(gamma+1) + 1.
    """
    return ((upsilon - 1.0) + p.beta) / (p.gamma + 1.0) + 1.0


def monomial_transform(p: OperatorParams, upsilon: float) -> MonomialImage:
    """Closed-form image of the monomial z^upsilon.

    Returns coefficient (gamma+1)^{beta-tau} Gamma(X) Gamma(tau) /
    (Gamma(X - beta + tau) Gamma(beta)) with X = (upsilon+beta-1)/(gamma+1) + 1,
    and exponent (1 - beta + tau) * gamma + upsilon. Negative upsilon is
    rejected; non-integer upsilon >= 0 is allowed (the formula extends).
    """
    upsilon = float(upsilon)
    if upsilon < 0:
        raise DomainError(f"monomial power must be >= 0, got {upsilon}")
    x = _x_argument(p, upsilon)
    s = (log_gamma(x) - log_gamma(x + p.diff)) + (log_gamma(p.tau) - log_gamma(p.beta))
    coeff = (p.gamma + 1.0) ** (-p.diff) * math.exp(s)
    return MonomialImage(coefficient=coeff, exponent=p.shift + upsilon)


@dataclass
class OperatorImage:
    """Operator image z^prefactor_power * series(z)."""

    prefactor_power: float
    series: PowerSeries

    def evaluate(self, z) -> complex:
        z = complex(z)
        if z == 0:
            # z^p -> 0 for p > 0; the p == 0 case degenerates to the series value.
            if self.prefactor_power == 0.0:
                return self.series.evaluate(z)
            return 0.0 + 0.0j
        return cmath.exp(self.prefactor_power * cmath.log(z)) * self.series.evaluate(z)

    def to_json_dict(self) -> dict:
        return {
            "prefactor_power": self.prefactor_power,
            "coefficients": [[c.real, c.imag] for c in self.series.coeffs],
            "order": self.series.order,
        }


def apply_operator(p: OperatorParams, f: PowerSeries) -> OperatorImage:
    """Apply the operator termwise to a truncated series.

    Each monomial c_u z^u maps to c_u * C(u) z^{shift + u}; the common
    prefactor z^shift is represented once and the scaled coefficients
    stay inside the PowerSeries algebra.
    """
    coeffs = np.empty_like(f.coeffs)
    for u in range(f.coeffs.size):
        coeffs[u] = f.coeffs[u] * monomial_transform(p, u).coefficient
    return OperatorImage(prefactor_power=p.shift, series=PowerSeries(coeffs))


# ---------------------------------------------------------------------------
# Normalized operator Theta: multiplier sequence Phi
# ---------------------------------------------------------------------------


def theta_front_constant(p: OperatorParams) -> float:
    """Gamma(beta/(gamma+1) + 1 - beta + tau) / Gamma(beta/(gamma+1) + 1).

    This is Phi(1)'s normalizer; multiplying the raw Gamma-ratio sequence
    by it pins the kappa = 1 multiplier at exactly 1.
    """
    b1 = p.beta / (p.gamma + 1.0) + 1.0
    return math.exp(log_gamma(b1 + p.diff) - log_gamma(b1))


def gamma_shift_ratio(p: OperatorParams, m: float) -> float:
    """Gamma(X_m) / Gamma(X_m - beta + tau) with X_m = (m+beta-1)/(gamma+1) + 1."""
    x = _x_argument(p, m)
    return math.exp(log_gamma(x) - log_gamma(x + p.diff))


def phi_multiplier(p: OperatorParams, kappa: int) -> float:
    """Normalized multiplier Phi(kappa), kappa >= 1; Phi(1) == 1.0 exactly.

    Computed as a single exponentiated sum of four log-Gammas so the
    kappa = 1 and tau = beta cancellations are exact in floating point.
    """
    if kappa < 1 or kappa != int(kappa):
        raise DomainError(f"multiplier index must be an integer >= 1, got {kappa!r}")
    b1 = p.beta / (p.gamma + 1.0) + 1.0
    x = _x_argument(p, kappa)
    s = (log_gamma(b1 + p.diff) - log_gamma(b1)) + (log_gamma(x) - log_gamma(x + p.diff))
    return math.exp(s)


def theta_multiplier_apply(p: OperatorParams, f: PowerSeries) -> PowerSeries:
    """Apply the Theta multiplier a_k -> Phi(k) a_k linearly (k >= 1).

    Requires a vanishing constant term but not full normalization, so it
    also serves non-normalized test families like z^n / n.
    """
    if abs(f.coeffs[0]) > 1e-12:
        raise DomainError("Theta needs a series with zero constant term")
    coeffs = f.coeffs.copy()
    coeffs[0] = 0.0
    for k in range(1, coeffs.size):
        coeffs[k] = coeffs[k] * phi_multiplier(p, k)
    return PowerSeries(coeffs)


def theta_normalize(p: OperatorParams, f: PowerSeries) -> PowerSeries:
    """Normalized operator image z + sum_{k>=2} Phi(k) a_k z^k.

    The input must be class-A normalized (f(0) = 0, f'(0) = 1).
    """
    if not f.is_normalized():
        raise DomainError("theta_normalize requires a normalized series (c0 = 0, c1 = 1)")
    return theta_multiplier_apply(p, f)


def theta_fox_wright_spec(p: OperatorParams):
    """(constant, FoxWrightSpec) of the Hadamard kernel for Theta.

    Theta f = constant * [z 2Psi1(z)] (x) f(z), where (x) is the
    coefficientwise product: the z^kappa kernel coefficient times the
    constant reproduces Phi(kappa), with the kappa = 1 coefficient
    normalizing to exactly 1.
    """
    g1 = p.gamma + 1.0
    b1 = p.beta / g1 + 1.0
    spec = FoxWrightSpec(
        upper=((1.0, 1.0), (b1, 1.0 / g1)),
        lower=((b1 + p.diff, 1.0 / g1),),
    )
    return theta_front_constant(p), spec


def theta_hadamard(p: OperatorParams, f: PowerSeries) -> PowerSeries:
    """Theta image computed through the Fox-Wright Hadamard kernel.

    Independent route used to cross-check theta_normalize: coefficient
    kappa of the image is constant * kernel(kappa-1) * a_kappa.
    """
    if abs(f.coeffs[0]) > 1e-12:
        raise DomainError("Theta needs a series with zero constant term")
    constant, spec = theta_fox_wright_spec(p)
    coeffs = f.coeffs.copy()
    coeffs[0] = 0.0
    for k in range(1, coeffs.size):
        coeffs[k] = coeffs[k] * constant * fox_wright_coefficient(spec, k - 1)
    return PowerSeries(coeffs)


# ---------------------------------------------------------------------------
# Closed-form images of the stock inputs
# ---------------------------------------------------------------------------


def sum_coefficient_series(coeff_fn, z, max_terms: int = MAX_TERMS_DEFAULT) -> EvalOutcome:
    """Sum sum_k coeff_fn(k) z^k with the shared convergence monitor.

    Same status semantics as fox_wright_eval, for kernels given by a
    plain coefficient callable instead of a Fox-Wright parameter block.
    """
    z = complex(z)
    try:
        c0 = complex(coeff_fn(0))
    except PoleHitError:
        return EvalOutcome(complex("nan"), EvalStatus.POLE_HIT, 0, math.inf)
    if z == 0:
        return EvalOutcome(c0, EvalStatus.CONVERGED, 1, 0.0)
    total = c0
    monitor = SeriesMonitor()
    monitor.update(abs(c0))
    zk = 1.0 + 0.0j
    for kappa in range(1, max_terms):
        zk *= z
        try:
            term = complex(coeff_fn(kappa)) * zk
        except PoleHitError:
            return EvalOutcome(total, EvalStatus.POLE_HIT, kappa, math.inf)
        abs_term = abs(term)
        total += term
        monitor.update(abs_term)
        if monitor.diverged:
            return EvalOutcome(total, EvalStatus.DIVERGENT, kappa + 1, math.inf)
        if abs_term == 0.0:
            return EvalOutcome(total, EvalStatus.CONVERGED, kappa + 1, 0.0)
        tail = monitor.tail_bound()
        if tail is not None and tail <= 1e-16 * max(1.0, abs(total)):
            return EvalOutcome(total, EvalStatus.CONVERGED, kappa + 1, tail)
    tail = monitor.tail_bound()
    return EvalOutcome(total, EvalStatus.SLOW_CONVERGENCE, max_terms, math.inf if tail is None else tail)


@dataclass
class ClosedFormImage:
    """Closed-form operator image constant * z^power * sum_k g(k) z^k.

    For the Koebe-type and z*exp(z) inputs the inner sum is an exact
    Fox-Wright series (fox_wright is set); for the confluent and
    Lerch-type inputs it is a Beta-factor coefficient series exposed
    through term_coefficient.
    """

    kind: str
    params: dict
    constant: float
    power: float
    fox_wright: FoxWrightSpec | None = None
    term_coefficient: object = None
    max_terms: int = field(default=MAX_TERMS_DEFAULT, repr=False)

    def inner_sum(self, z, max_terms: int | None = None) -> EvalOutcome:
        budget = self.max_terms if max_terms is None else max_terms
        if self.fox_wright is not None:
            return fox_wright_eval(self.fox_wright, z, budget)
        return sum_coefficient_series(self.term_coefficient, z, budget)

    def evaluate(self, z, max_terms: int | None = None) -> complex:
        """Value at z; raises ConvergenceError-free, trusts CONVERGED only."""
        z = complex(z)
        out = self.inner_sum(z, max_terms)
        if out.status is not EvalStatus.CONVERGED:
            raise DomainError(
                f"closed-form series for {self.kind!r} did not converge at z={z} "
                f"(status {out.status.value})"
            )
        if z == 0:
            return 0.0j if self.power > 0 else complex(self.constant * out.value)
        return self.constant * cmath.exp(self.power * cmath.log(z)) * out.value

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "constant": self.constant,
            "power": self.power,
            "fox_wright": None if self.fox_wright is None else self.fox_wright.to_json_dict(),
        }


def closed_form_spec(p: OperatorParams, kind: str, alpha: float | None = None,
                     lam: float | None = None, rho: float | None = None,
                     s: float | None = None, a: float | None = None) -> ClosedFormImage:
    """Closed-form image of a stock input under the operator.

    Supported kinds: 'koebe' (needs alpha >= 1), 'exp_times_z',
    'kummer' (alpha, lam), 'hurwitz_lerch' (alpha, lam, rho, s, a with
    rho and a off the Gamma poles, a > 0, s > 0).
    """
    g1 = p.gamma + 1.0
    b1 = p.beta / g1 + 1.0
    power = p.shift + 1.0
    log_front = log_gamma(p.tau) - log_gamma(p.beta) - p.diff * math.log(g1)

    if kind == "koebe":
        if alpha is None or alpha < 1:
            raise DomainError("koebe closed form needs alpha >= 1")
        constant = math.exp(log_front - log_gamma(float(alpha)))
        spec = FoxWrightSpec(
            upper=((float(alpha), 1.0), (b1, 1.0 / g1)),
            lower=((b1 + p.diff, 1.0 / g1),),
        )
        return ClosedFormImage("koebe", {"alpha": float(alpha)}, constant, power, fox_wright=spec)

    if kind == "exp_times_z":
        constant = math.exp(log_front)
        spec = FoxWrightSpec(upper=((b1, 1.0 / g1),), lower=((b1 + p.diff, 1.0 / g1),))
        return ClosedFormImage("exp_times_z", {}, constant, power, fox_wright=spec)

    if kind == "kummer":
        if alpha is None or lam is None:
            raise DomainError("kummer closed form needs alpha and lam")
        constant = math.exp(log_front - log_gamma(1.0 + p.diff))

        def term(kappa, _alpha=float(alpha), _lam=float(lam)):
            x = b1 + kappa / g1
            return (
                pochhammer(_alpha, kappa)
                / (pochhammer(_lam, kappa) * math.factorial(kappa))
                * beta_fn(x, 1.0 + p.diff)
                * (x + p.diff)
            )

        return ClosedFormImage(
            "kummer", {"alpha": float(alpha), "lam": float(lam)}, constant, power,
            term_coefficient=term,
        )

    if kind == "hurwitz_lerch":
        if None in (alpha, lam, rho, s, a):
            raise DomainError("hurwitz_lerch closed form needs alpha, lam, rho, s, a")
        if a <= 0:
            raise DomainError("hurwitz_lerch shift parameter a must be positive")
        if s <= 0:
            raise DomainError("hurwitz_lerch exponent s must be positive")
        constant = math.exp(log_front - log_gamma(1.0 + p.diff))

        def term(kappa, _alpha=float(alpha), _lam=float(lam), _rho=float(rho),
                 _s=float(s), _a=float(a)):
            x = b1 + kappa / g1
            return (
                pochhammer(_alpha, kappa) * pochhammer(_lam, kappa)
                / (pochhammer(_rho, kappa) * math.factorial(kappa) * (kappa + _a) ** _s)
                * beta_fn(x, 1.0 + p.diff)
                * (x + p.diff)
            )

        return ClosedFormImage(
            "hurwitz_lerch",
            {"alpha": float(alpha), "lam": float(lam), "rho": float(rho), "s": float(s), "a": float(a)},
            constant, power, term_coefficient=term,
        )

    raise DomainError(
        f"unknown closed form kind {kind!r}; choices: koebe, exp_times_z, kummer, hurwitz_lerch"
    )
