"""Quadrature specifications and trapezoid rules on logarithmic grids.

All integrals over the multiplicative half-line use the Haar measure
d×x = dx/x, which becomes Lebesgue measure du under u = ln x.  For smooth
integrands that decay rapidly at both window ends the uniform trapezoid
rule converges faster than any power of the spacing, so it is the default
everywhere; refinement-based error estimates keep it honest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ToleranceError


@dataclass(frozen=True)
class QuadratureSpec:
    """Log-coordinate window [u_min, u_max] with n_points and a tolerance."""

    u_min: float = -40.0
    u_max: float = 40.0
    n_points: int = 4001
    tolerance: float = 1e-10

    def __post_init__(self):
        if not self.u_min < self.u_max:
            raise ValueError("u_min must be < u_max")
        if self.n_points < 16:
            raise ValueError("n_points must be at least 16")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    def u_grid(self) -> np.ndarray:
        return np.linspace(self.u_min, self.u_max, self.n_points)

    def x_grid(self) -> np.ndarray:
        return np.exp(self.u_grid())

    def halved(self) -> "QuadratureSpec":
        """Same window at roughly half the resolution (for error estimates)."""
        n = max(16, (self.n_points + 1) // 2)
        return QuadratureSpec(self.u_min, self.u_max, n, self.tolerance)


def trapezoid(values: np.ndarray, spacing: float) -> complex:
    """Plain uniform trapezoid rule."""
    v = np.asarray(values)
    inner = v[1:-1].sum()
    return (inner + 0.5 * (v[0] + v[-1])) * spacing


def integrate_log_grid(func, q: QuadratureSpec, *, check: bool = True):
    """Integrate func(x) d×x over the window of q by trapezoid in u = ln x.

    func must accept a numpy array of positive x.  With check=True the
    result is compared against a half-resolution pass; the difference is
    the error estimate and a ToleranceError is raised if it exceeds
    q.tolerance.  Returns (value, est_error).
    """
    u = q.u_grid()
    h = u[1] - u[0]
    full = trapezoid(func(np.exp(u)), h)
    if not check:
        return full, 0.0
    uc = q.halved().u_grid()
    coarse = trapezoid(func(np.exp(uc)), uc[1] - uc[0])
    est = abs(full - coarse)
    if est > q.tolerance:
        raise ToleranceError(
            f"quadrature error estimate {est:.3e} exceeds tolerance "
            f"{q.tolerance:.3e} on window [{q.u_min}, {q.u_max}]")
    return full, est


def integrate_line(func, lo: float, hi: float, n: int, *,
                   tolerance: float | None = None):
    """Trapezoid on a uniform linear grid over [lo, hi].

    Returns (value, est_error); est_error from a half-resolution pass.
    Raises ToleranceError when a tolerance is given and not met.
    """
    t = np.linspace(lo, hi, n)
    full = trapezoid(func(t), t[1] - t[0])
    tc = np.linspace(lo, hi, max(16, (n + 1) // 2))
    coarse = trapezoid(func(tc), tc[1] - tc[0])
    est = abs(full - coarse)
    if tolerance is not None and est > tolerance:
        raise ToleranceError(
            f"quadrature error estimate {est:.3e} exceeds tolerance "
            f"{tolerance:.3e} on [{lo}, {hi}]")
    return full, est


def cinf_step(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1, with the exact
    partition property cinf_step(t) + cinf_step(1 - t) = 1.

    Built from h(v) = exp(-1/v) as h(t) / (h(t) + h(1 - t)); every
    derivative vanishes at both ends, so integrands assembled from it
    keep trapezoid quadrature spectrally accurate.
    """
    t = np.asarray(t, dtype=float)
    lo = t <= 0.0
    hi = t >= 1.0
    mid = ~(lo | hi)
    out = np.zeros_like(t)
    out[hi] = 1.0
    tm = t[mid]
    a = np.exp(-1.0 / tm)
    b = np.exp(-1.0 / (1.0 - tm))
    out[mid] = a / (a + b)
    return out if out.ndim else float(out)
