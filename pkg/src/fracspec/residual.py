"""Residual diagnostics for the truncated eigen-expansion solutions.

The residual Delta(t) = RHS - LHS measures how well the expansion satisfies
its fractional equation: RHS is the nonlinear right-hand side evaluated on the
expansion, LHS the termwise Caputo derivative sum_k c_k lambda_k
E_alpha(lambda_k t^alpha) (exact, via the eigenfunction identity
d^a E_a(l t^a) = l E_a(l t^a); no quadrature is involved).  For alpha = 1 the
residual vanishes to rounding; for alpha < 1 it grows like t^(2 alpha) at
short times, peaks at an intermediate time, and decays like t^(-alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gamma as _gamma

from ._summation import exact_dot, neumaier_dot_rows
from .mittag_leffler import MlParams, ml_eval
from .problems import (EquationKind, ProblemSpec, SpectralSolution, Trajectory,
                       build_spectrum, mode_matrix)

__all__ = [
    "FitError",
    "ResidualReport",
    "rhs_nonlinear",
    "lhs_caputo",
    "residual",
    "residual_trajectory",
    "residual_short_asymptote",
    "residual_long_asymptote",
    "cubic_long_coefficients",
    "rescale_residual",
    "fit_power_law",
    "analyze",
    "default_grid",
]


class FitError(ArithmeticError):
    """Power-law fit could not be performed on the requested window."""


def default_grid(lo: float = 1e-4, hi: float = 1e3, n: int = 400) -> np.ndarray:
    """Log-spaced analysis grid resolving both scaling windows."""
    return np.geomspace(lo, hi, n)


def rhs_nonlinear(spec: ProblemSpec, x):
    """Right-hand side f(x) of the rate equation (vectorised in x).

    Overflow is allowed to propagate as inf: the integrator uses the finite
    check on the state itself to diagnose divergence.
    """
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        if spec.kind is EquationKind.RICCATI:
            out = 1.0 - x * x
        elif spec.kind is EquationKind.LOGISTIC:
            out = spec.lambda_ ** spec.alpha * x * (1.0 - x)
        else:
            out = -spec.a * x - spec.b * x ** 3
    return float(out) if out.ndim == 0 else out


def lhs_caputo(sol: SpectralSolution, t: float, ml: MlParams | None = None) -> float:
    """Caputo derivative of the expansion, summed termwise.

    Each mode obeys d^a E_a(l t^a) = l E_a(l t^a), so the derivative is
    sum_k c_k lambda_k E_a(lambda_k t^a).  At t = 0 this returns the finite
    mode-sum limit sum_k c_k lambda_k (the k = 0 constant mode contributes
    nothing for any t).
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if ml is None:
        ml = MlParams(alpha=sol.spec.alpha)
    modes = ml_eval(sol.eigenvalues * t ** sol.spec.alpha, ml)
    return exact_dot(sol.coeffs * sol.eigenvalues, modes)


def residual(sol: SpectralSolution, t: float, ml: MlParams | None = None) -> float:
    """Delta(t) = rhs_nonlinear(X(t)) - lhs_caputo(t) at a single time."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if ml is None:
        ml = MlParams(alpha=sol.spec.alpha)
    modes = ml_eval(sol.eigenvalues * t ** sol.spec.alpha, ml)
    x = sol.spec.x0 if t == 0 else sol.offset + exact_dot(sol.coeffs, modes)
    lhs = exact_dot(sol.coeffs * sol.eigenvalues, modes)
    return rhs_nonlinear(sol.spec, x) - lhs


def residual_trajectory(sol: SpectralSolution, grid,
                        ml: MlParams | None = None) -> Trajectory:
    """Delta sampled over a grid of times > 0 (one mode matrix, reused for
    both sides)."""
    grid = np.asarray(grid, dtype=float)
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be positive and strictly increasing")
    modes = mode_matrix(sol, grid, ml)
    x = sol.offset + neumaier_dot_rows(modes, sol.coeffs)
    lhs = neumaier_dot_rows(modes, sol.coeffs * sol.eigenvalues)
    delta = rhs_nonlinear(sol.spec, x) - lhs
    return Trajectory(times=grid, values=delta, meta="residual")


def residual_short_asymptote(spec: ProblemSpec, t):
    """Closed-form short-time residual model, scaling as t^(2 alpha).

    riccati : t^2a / G^2(1+a) * (1 - x0^2)^2
    logistic: lambda^3a * t^2a / G^2(1+a) * x0^2 (x0-1)^2   (the general rate
              enters through the exact rescaling Delta_l(t) = l^a Delta_1(l t))
    cubic   : t^2a / G^2(1+a) * x0^3 (x0-1)^2 [3 - t^a/G(1+a) (x0-1)^3]
              (unit-rate form, a = b = 1)
    """
    tt = np.asarray(t, dtype=float)
    a = spec.alpha
    g1 = math.gamma(1.0 + a)
    base = tt ** (2.0 * a) / g1 ** 2
    if spec.kind is EquationKind.RICCATI:
        out = base * (1.0 - spec.x0 ** 2) ** 2
    elif spec.kind is EquationKind.LOGISTIC:
        out = base * spec.lambda_ ** (3.0 * a) * spec.x0 ** 2 * (spec.x0 - 1.0) ** 2
    else:
        out = base * spec.x0 ** 3 * (spec.x0 - 1.0) ** 2 * (
            3.0 - tt ** a / g1 * (spec.x0 - 1.0) ** 3)
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=64)
def _cubic_long_fit(alpha: float, x0: float, a: float, b: float,
                    terms: int) -> tuple[float, float, float]:
    spec = ProblemSpec(kind=EquationKind.CUBIC, alpha=alpha, x0=x0, a=a, b=b)
    sol = build_spectrum(spec, terms)
    grid = np.geomspace(1e2, 1e4, 64)
    delta = residual_trajectory(sol, grid).values
    u = grid ** (-alpha) / _gamma(1.0 - alpha)
    design = np.stack([u, u ** 2, u ** 3], axis=1)
    # relative least squares so the decade span does not drown the tail
    w = 1.0 / np.abs(delta)
    coef, *_ = np.linalg.lstsq(design * w[:, None], delta * w, rcond=None)
    return float(coef[0]), float(coef[1]), float(coef[2])


def cubic_long_coefficients(spec: ProblemSpec, terms: int = 100) -> tuple[float, float, float]:
    """(C1, C2, C3) of the cubic tail model C1 u + C2 u^2 + C3 u^3 with
    u = t^(-alpha)/Gamma(1-alpha), fitted to the residual on t in [1e2, 1e4]."""
    if spec.kind is not EquationKind.CUBIC:
        raise ValueError("cubic coefficients are defined for the cubic equation")
    if spec.alpha >= 1.0:
        raise ValueError("tail model requires alpha < 1")
    return _cubic_long_fit(spec.alpha, spec.x0, spec.a, spec.b, terms)


def residual_long_asymptote(spec: ProblemSpec, t, terms: int = 100):
    """Closed-form long-time residual model, scaling as t^(-alpha).

    With u = t^(-a)/Gamma(1-a) and L = log((x0+1)/2):

    riccati : u [2L + x0 + 1 - L^2 u]
    logistic: u (x0 - 1 - log x0) - lambda^(-a) u^2 log^2 x0
    cubic   : C1 u + C2 u^2 + C3 u^3 with numerically fitted coefficients
    """
    if spec.alpha >= 1.0:
        raise ValueError("tail model requires alpha < 1 (Gamma(1-alpha) pole)")
    tt = np.asarray(t, dtype=float)
    a = spec.alpha
    u = tt ** (-a) / _gamma(1.0 - a)
    if spec.kind is EquationKind.RICCATI:
        big_l = math.log((spec.x0 + 1.0) / 2.0)
        out = u * (2.0 * big_l + spec.x0 + 1.0 - big_l ** 2 * u)
    elif spec.kind is EquationKind.LOGISTIC:
        lx = math.log(spec.x0)
        out = u * (spec.x0 - 1.0 - lx) - spec.lambda_ ** (-a) * u ** 2 * lx ** 2
    else:
        c1, c2, c3 = cubic_long_coefficients(spec, terms)
        out = c1 * u + c2 * u ** 2 + c3 * u ** 3
    return float(out) if out.ndim == 0 else out


def rescale_residual(traj: Trajectory, lambda_: float, alpha: float) -> Trajectory:
    """Map a logistic residual curve at growth rate lambda onto the rate-free
    master curve: t -> lambda t, Delta -> Delta / lambda^alpha.  Curves for
    different rates coincide exactly after this transform."""
    if lambda_ <= 0:
        raise ValueError("lambda_ must be positive")
    return Trajectory(times=traj.times * lambda_,
                      values=traj.values * lambda_ ** (-alpha),
                      meta=traj.meta, info=traj.info)


def fit_power_law(traj: Trajectory, t_lo: float, t_hi: float) -> tuple[float, float]:
    """Least-squares slope/prefactor of log|value| against log t on a window.

    Returns (exponent, prefactor).  Raises FitError when fewer than 5 nonzero
    samples fall inside [t_lo, t_hi] or the values change sign there.
    """
    mask = (traj.times >= t_lo) & (traj.times <= t_hi) & (traj.values != 0.0)
    if mask.sum() < 5:
        raise FitError(f"need at least 5 nonzero points in [{t_lo:g}, {t_hi:g}]")
    vals = traj.values[mask]
    if np.any(vals > 0) and np.any(vals < 0):
        raise FitError("values change sign inside the fit window")
    slope, intercept = np.polyfit(np.log(traj.times[mask]), np.log(np.abs(vals)), 1)
    return float(slope), float(math.exp(intercept))


@dataclass(frozen=True, eq=False)
class ResidualReport:
    """Residual curve, its two asymptote models, fitted window exponents and
    the peak deviation (first occurrence on ties).

    Fitted exponents are NaN when a window fit is impossible (alpha = 1, or a
    sign-changing window).
    """

    spec: ProblemSpec
    grid: Trajectory
    short_asymptote: Trajectory
    long_asymptote: Trajectory
    fitted_short_exponent: float
    fitted_long_exponent: float
    max_abs_delta: float
    t_at_max: float

    def summary(self) -> str:
        return (f"max|delta|={self.max_abs_delta:.6g} at t={self.t_at_max:.6g}; "
                f"short exponent={self.fitted_short_exponent:.4g} "
                f"long exponent={self.fitted_long_exponent:.4g}")

    def to_csv(self, path) -> None:
        from .io import write_report_csv
        write_report_csv(self, path)


def analyze(spec: ProblemSpec, terms: int = 100, grid=None,
            short_window: tuple[float, float] | None = None,
            long_window: tuple[float, float] | None = None) -> ResidualReport:
    """Full residual study of one problem: curve, asymptotes, fits, peak.

    Default fit windows are [min(grid), 1e-2] and [1e2, max(grid)]; pass
    explicit windows to override.  At alpha = 1 the asymptote curves are zero
    and the exponents NaN (the residual is rounding noise by construction).
    """
    if grid is None:
        grid = default_grid()
    grid = np.asarray(grid, dtype=float)
    sol = build_spectrum(spec, terms)
    delta = residual_trajectory(sol, grid)

    if spec.alpha < 1.0:
        short = Trajectory(grid, residual_short_asymptote(spec, grid), meta="residual")
        long_ = Trajectory(grid, residual_long_asymptote(spec, grid, terms), meta="residual")
    else:
        zeros = np.zeros_like(grid)
        short = Trajectory(grid, zeros, meta="residual")
        long_ = Trajectory(grid, zeros, meta="residual")

    if short_window is None:
        short_window = (float(grid[0]), 1e-2)
    if long_window is None:
        long_window = (1e2, float(grid[-1]))

    def _fit(window):
        if spec.alpha >= 1.0:
            return math.nan
        try:
            slope, _ = fit_power_law(delta, *window)
        except FitError:
            return math.nan
        return slope

    idx = int(np.argmax(np.abs(delta.values)))
    return ResidualReport(
        spec=spec,
        grid=delta,
        short_asymptote=short,
        long_asymptote=long_,
        fitted_short_exponent=_fit(short_window),
        fitted_long_exponent=_fit(long_window),
        max_abs_delta=float(np.abs(delta.values[idx])),
        t_at_max=float(delta.times[idx]),
    )
