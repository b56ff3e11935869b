"""Weighted Bloch-norm estimation on disk grids.

Norms here are grid infima of the true suprema: a truncated series is
evaluated on a fixed polar grid and the maximum of |f'(z)| (1-|z|)^mu / w(1-|z|)
(or classically (1-|z|^2)|f'(z)|) is reported together with the argmax
point. Comparisons between functions are made on matched grids so the
systematic under-estimation cancels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fracdiff import OperatorParams, theta_multiplier_apply
from .geometry import DiskGrid
from .series import PowerSeries, monomial_series

WEIGHT_KINDS = ("constant_one", "power", "log_weight", "table")


@dataclass(frozen=True)
class WeightSpec:
    """Weight function w(t) on (0, 1] used by the weighted Bloch norm.

    kinds: 'constant_one' (w = 1, recovering the classical space),
    'power' (w(t) = t^alpha_w), 'log_weight' (w(t) = 1 - log t), and
    'table' (piecewise-linear through the given (t, w) points).
    """

    kind: str = "constant_one"
    alpha_w: float = 0.0
    table: tuple = ()

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise DomainError(f"unknown weight kind {self.kind!r}; choices: {WEIGHT_KINDS}")
        if self.kind == "table":
            pts = tuple((float(t), float(wv)) for t, wv in self.table)
            object.__setattr__(self, "table", pts)
            if len(pts) < 2:
                raise DomainError("table weight needs at least two points")
            ts = [t for t, _ in pts]
            if any(b <= a for a, b in zip(ts, ts[1:])):
                raise DomainError("table abscissae must be strictly increasing")
            if any(not 0.0 < t <= 1.0 for t in ts):
                raise DomainError("table abscissae must lie in (0, 1]")
            if any(wv <= 0.0 for _, wv in pts):
                raise DomainError("table weight values must be positive")

    def evaluate(self, t):
        """w(t) for t in (0, 1], scalar or ndarray; must come out positive."""
        t_arr = np.asarray(t, dtype=np.float64)
        if np.any(t_arr <= 0.0) or np.any(t_arr > 1.0):
            raise DomainError("weight argument must lie in (0, 1]")
        if self.kind == "constant_one":
            out = np.ones_like(t_arr)
        elif self.kind == "power":
            out = t_arr**self.alpha_w
        elif self.kind == "log_weight":
            out = 1.0 - np.log(t_arr)
        else:
            xs = np.array([x for x, _ in self.table])
            ys = np.array([y for _, y in self.table])
            out = np.interp(t_arr, xs, ys)
        if np.any(out <= 0.0):
            raise DomainError(f"weight {self.kind!r} evaluated non-positive")
        if out.ndim == 0:
            return float(out)
        return out

    def to_json_dict(self) -> dict:
        doc = {"kind": self.kind}
        if self.kind == "power":
            doc["alpha_w"] = self.alpha_w
        if self.kind == "table":
            doc["table"] = [list(p) for p in self.table]
        return doc


def default_bloch_grid() -> DiskGrid:
    """Radii 0.05..0.99 in steps of 0.01 with 0.999 appended, 128 angles."""
    radii = tuple(k / 100 for k in range(5, 100)) + (0.999,)
    return DiskGrid(radii=radii, angles_per_radius=128)


@dataclass
class BlochEstimate:
    """Grid supremum of a derivative-weighted quantity.

    truncation_warning is a boundary-sensitivity heuristic: it fires when
    coefficients continuing at the magnitude of the last stored one could
    contribute more than 1e-8 of the estimate at the outermost radius.
    Exact polynomials can trigger it spuriously; it is advisory only.
    """

    norm_estimate: float
    argmax_point: complex
    grid: DiskGrid
    mu: float
    truncation_warning: bool = False

    def to_json_dict(self) -> dict:
        return {
            "norm_estimate": self.norm_estimate,
            "argmax_point": [self.argmax_point.real, self.argmax_point.imag],
            "mu": self.mu,
            "grid": self.grid.to_json_dict(),
            "truncation_warning": self.truncation_warning,
        }


def _sup_over_grid(f: PowerSeries, grid: DiskGrid, radial_factor) -> tuple:
    """(max value, argmax point) of |f'(z)| * radial_factor(r) over the grid."""
    fp = f.derivative()
    best = -math.inf
    best_z = complex(grid.radii[0])
    for r in grid.radii:
        z = grid.ring(r)
        vals = np.abs(fp.evaluate(z)) * radial_factor(r)
        j = int(np.argmax(vals))
        if vals[j] > best:
            best = float(vals[j])
            best_z = complex(z[j])
    return best, best_z


def _tail_heuristic(f: PowerSeries, r: float) -> float:
    """Crude bound on the neglected derivative tail past the stored order.

    Assumes hypothetical coefficients of magnitude |c_N| continue forever:
    |c_N| * sum_{k>N} k r^{k-1} = |c_N| d/dr [r^{N+1}/(1-r)].
    """
    n = f.order
    c = abs(f.coeffs[-1])
    if c == 0.0 or r >= 1.0:
        return 0.0
    return c * ((n + 1) * r**n * (1.0 - r) + r ** (n + 1)) / (1.0 - r) ** 2


def bloch_norm_classical(f: PowerSeries, grid: DiskGrid | None = None) -> BlochEstimate:
    """Grid supremum of (1 - |z|^2) |f'(z)|."""
    grid = grid or default_bloch_grid()
    best, best_z = _sup_over_grid(f, grid, lambda r: 1.0 - r * r)
    r_max = grid.radii[-1]
    warn = _tail_heuristic(f, r_max) * (1.0 - r_max * r_max) > 1e-8 * max(best, 1e-300)
    return BlochEstimate(best, best_z, grid, mu=1.0, truncation_warning=bool(warn))


def bloch_norm_weighted(f: PowerSeries, mu: float, w: WeightSpec,
                        grid: DiskGrid | None = None) -> BlochEstimate:
    """Grid supremum of |f'(z)| (1 - |z|)^mu / w(1 - |z|)."""
    if mu <= 0:
        raise DomainError(f"exponent mu must be positive, got {mu}")
    grid = grid or default_bloch_grid()

    def factor(r):
        t = 1.0 - r
        return t**mu / w.evaluate(t)

    best, best_z = _sup_over_grid(f, grid, factor)
    r_max = grid.radii[-1]
    warn = _tail_heuristic(f, r_max) * factor(r_max) > 1e-8 * max(best, 1e-300)
    return BlochEstimate(best, best_z, grid, mu=float(mu), truncation_warning=bool(warn))


def little_bloch_decay(f: PowerSeries, radii, angles_per_radius: int = 128) -> list:
    """Max over angle of (1 - r^2) |f'| for each radius, in the given order."""
    fp = f.derivative()
    out = []
    for r in radii:
        r = float(r)
        if not 0.0 < r < 1.0:
            raise DomainError("radii must lie in (0, 1)")
        theta = 2.0 * np.pi * np.arange(angles_per_radius) / angles_per_radius
        z = r * np.exp(1j * theta)
        out.append(float(np.max(np.abs(fp.evaluate(z)))) * (1.0 - r * r))
    return out


@dataclass
class EquivalenceReport:
    """Matched-grid norms of f and of its Theta image, plus their ratio."""

    norm_f: BlochEstimate
    norm_theta_f: BlochEstimate
    ratio: float

    def to_json_dict(self) -> dict:
        return {
            "norm_f": self.norm_f.to_json_dict(),
            "norm_theta_f": self.norm_theta_f.to_json_dict(),
            "ratio": self.ratio,
        }


def boundedness_equivalence_check(p: OperatorParams, f: PowerSeries, mu: float,
                                  w: WeightSpec, grid: DiskGrid | None = None) -> EquivalenceReport:
    """Desk-scale witness that f and Theta f have comparable weighted norms.

    Both norms are taken on the same grid; finiteness of both at matched
    scale is the check — no operator-norm claim is made.
    """
    grid = grid or default_bloch_grid()
    nf = bloch_norm_weighted(f, mu, w, grid)
    ntf = bloch_norm_weighted(theta_multiplier_apply(p, f), mu, w, grid)
    if nf.norm_estimate == 0.0:
        raise DomainError("input series has zero derivative on the grid")
    return EquivalenceReport(nf, ntf, ntf.norm_estimate / nf.norm_estimate)


def compactness_decay_check(p: OperatorParams, family_index_max: int, mu: float,
                            w: WeightSpec, grid: DiskGrid | None = None) -> list:
    """Weighted norms of Theta applied to f_n(z) = z^n / n for n = 2..max.

    The family tends to 0 uniformly on the closed disk; a compact operator
    must send it to 0 in norm, so the returned sequence should decay past
    a burn-in index. Note the grid supremum of r^{n-1}(1-r)^mu itself
    decays only like n^{-mu}, which bounds how fast this witness can fall.
    """
    if family_index_max < 2:
        raise DomainError("family_index_max must be at least 2")
    grid = grid or default_bloch_grid()
    out = []
    for n in range(2, family_index_max + 1):
        f_n = (1.0 / n) * monomial_series(n)
        theta_f = theta_multiplier_apply(p, f_n)
        out.append(bloch_norm_weighted(theta_f, mu, w, grid).norm_estimate)
    return out
