"""Fourier and Mellin transforms for the test-function families.

The Fourier transform uses the convention
    (F f)(y) = integral f(x) exp(2 pi i x y) dx,
under which F is an involution on even functions and F^2 = -id on odd
ones.  On the Gaussian-polynomial family the transform is computed
symbolically (term by term, via the Hermite-style derivative recurrence),
so it is exact up to arithmetic rounding; a plain quadrature version is
kept as an independent cross-check oracle.

The Mellin transform uses the multiplicative-Haar normalisation
    (M f)(s) = integral_0^inf f(x) x^s dx/x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergentIntegralError, WindowError
from .families import ParityFunction, TestFunction
from .grids import QuadratureSpec, cinf_step, trapezoid


def fourier(f: ParityFunction) -> ParityFunction:
    """Symbolic Fourier transform of a Gaussian-polynomial function.

    Each term c x^k exp(-a pi x^2) maps to
    (2 pi i)^{-k} (d/dy)^k [a^{-1/2} exp(-pi y^2 / a)],
    expanded back into the same family with Gaussian scale 1/a.
    """
    out = []
    for coeff, degree, alpha in f.terms:
        # Polynomial part of the k-th derivative, as {degree: coefficient}.
        poly = {0: alpha ** -0.5 + 0.0j}
        for _ in range(degree):
            nxt: dict[int, complex] = {}
            for d, c in poly.items():
                if d >= 1:
                    nxt[d - 1] = nxt.get(d - 1, 0.0) + d * c
                nxt[d + 1] = nxt.get(d + 1, 0.0) - (2.0 * math.pi / alpha) * c
            poly = nxt
        prefactor = coeff / (2j * math.pi) ** degree
        for d, c in poly.items():
            out.append((prefactor * c, d, 1.0 / alpha))
    return ParityFunction(parity=f.parity, terms=tuple(out))


def fourier_quadrature(f, y, *, half_width: float = 12.0,
                       n_points: int = 8193) -> complex:
    """Oracle: (F f)(y) by trapezoid quadrature on [-L, L].

    f must decay to negligible size by |x| = half_width.  Slow but
    independent of the symbolic route; used for cross-checks.
    """
    x = np.linspace(-half_width, half_width, n_points)
    h = x[1] - x[0]
    vals = np.asarray(f(x), dtype=complex) * np.exp(2j * math.pi * x * y)
    return complex(trapezoid(vals, h))


@dataclass(frozen=True)
class MellinValue:
    """A Mellin-transform evaluation with an a-posteriori error estimate."""
    s: complex
    value: complex
    est_error: float


def mellin(f: TestFunction, s: complex, q: QuadratureSpec | None = None,
           ) -> MellinValue:
    """(M f)(s) by trapezoid quadrature on a logarithmic grid.

    In u = ln x the integrand f(e^u) e^{s u} is smooth with (for the
    supported families) fast decay, so the trapezoid rule is spectrally
    accurate.  The error estimate compares against the half-resolution
    grid; a window whose endpoints still carry mass raises WindowError.
    """
    s = complex(s)
    if q is None:
        q = QuadratureSpec()
    u = q.u_grid()
    h = u[1] - u[0]
    vals = np.asarray(f(np.exp(u)), dtype=complex) * np.exp(s * u)
    value = complex(trapezoid(vals, h))
    coarse = complex(trapezoid(vals[::2], 2.0 * h))
    est = abs(value - coarse)
    scale = float(np.max(np.abs(vals))) or 1.0
    edge = max(abs(vals[0]), abs(vals[-1]))
    if edge > 1e-13 * scale:
        raise WindowError(
            f"Mellin window [{q.u_min}, {q.u_max}] truncates mass: "
            f"edge/peak = {edge / scale:.3e}")
    return MellinValue(s=s, value=value, est_error=est + 10.0 * edge * h)


def mellin_parity(f: ParityFunction, s: complex,
                  q: QuadratureSpec | None = None) -> MellinValue:
    """Restricted Mellin transform integral_0^inf f(x) x^s dx/x for a
    Gaussian-polynomial function.

    Convergence at x = 0 needs Re(s) + k_min > 0 where k_min is the
    lowest monomial degree present; otherwise DivergentIntegralError.
    The small-x tail below the quadrature window is added analytically
    from the power-series expansion of the Gaussian factors.
    """
    s = complex(s)
    k_min = min(deg for _, deg, _ in f.terms)
    if s.real + k_min <= 0.05:
        raise DivergentIntegralError(
            f"Mellin integral diverges at 0: Re(s) + k_min = "
            f"{s.real + k_min:.3f} <= 0 (need > 0, with margin)")
    if q is None:
        q = QuadratureSpec(u_min=-60.0, u_max=6.0, n_points=6001)
    u = q.u_grid()
    h = u[1] - u[0]
    x = np.exp(u)
    vals = np.asarray(f(x), dtype=complex) * np.exp(s * u)
    value = complex(trapezoid(vals, h))
    coarse = complex(trapezoid(vals[::2], 2.0 * h))
    est = abs(value - coarse)
    # Analytic tail over (0, x0): expand exp(-a pi x^2) and integrate
    # monomials; converges fast since x0 = e^{u_min} is tiny.
    x0 = float(np.exp(q.u_min))
    tail = 0.0 + 0.0j
    for coeff, deg, alpha in f.terms:
        term = 0.0 + 0.0j
        for m in range(9):
            expo = s + deg + 2 * m
            term += (-alpha * math.pi) ** m / math.factorial(m) \
                * x0 ** expo / expo
        tail += coeff * term
    # Large-x edge must be in the Gaussian decay regime.
    scale = float(np.max(np.abs(vals))) or 1.0
    if abs(vals[-1]) > 1e-13 * scale:
        raise WindowError("mellin_parity window too small at large x")
    return MellinValue(s=s, value=value + tail, est_error=est + abs(tail) * 1e-12)


class ShiftedProfile:
    """The profile y -> f(|1 - y|) built from a multiplicative test
    function f on (0, inf) through its even extension.

    This is the shape that appears when the archimedean local term of
    the explicit formula is rewritten as a distributional pairing with
    the Fourier transform of ln|x|.
    """

    def __init__(self, f: TestFunction):
        self.f = f

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        x = np.abs(1.0 - y)
        out = np.zeros_like(y)
        mask = x > 1e-300
        if np.any(mask):
            out[mask] = self.f(x[mask])
        return out if out.ndim else float(out)

    def at_zero(self) -> float:
        return float(self.f(1.0))


def _integral_with_log_weight(g, x_max: float, *, v_min: float = -35.0,
                              n_points: int = 4001) -> complex:
    """integral_R ln|x| g(x) dx for g decaying to negligible size by
    |x| = x_max.

    Folded to (0, inf) and substituted x = e^v; the integrand
    v e^v (g(e^v) + g(-e^v)) vanishes at both ends, so plain trapezoid
    is spectrally accurate and the x = 0 log singularity never appears
    on the grid.
    """
    v = np.linspace(v_min, math.log(x_max), n_points)
    h = v[1] - v[0]
    x = np.exp(v)
    vals = v * x * (np.asarray(g(x), dtype=complex)
                    + np.asarray(g(-x), dtype=complex))
    return complex(trapezoid(vals, h))


def haar_real_cross(psi, *, x_max: float = 200.0, v_min: float = -35.0,
                    n_points: int = 4001) -> float:
    """integral_{R^x} psi(x) d^x x with Haar measure normalised so that
    it restricts to dx/x on the positive half-line for even psi; i.e.
    (1/2) integral_R psi(x) dx/|x|.  Requires psi(0) = 0 for convergence.
    """
    v = np.linspace(v_min, math.log(x_max), n_points)
    h = v[1] - v[0]
    x = np.exp(v)
    vals = 0.5 * (np.asarray(psi(x), dtype=complex)
                  + np.asarray(psi(-x), dtype=complex)).real
    return float(trapezoid(vals, h))


def pair_log_fourier(psi, *, x_max: float | None = None,
                     n_points: int = 4001) -> float:
    """Duality pairing <F(ln|x|), psi> = integral ln|x| (F psi)(x) dx.

    For Gaussian-polynomial psi the closed-form Fourier transform is
    used (it is itself validated against quadrature in the test suite),
    so only the log-weight integral is numerical.
    For ShiftedProfile psi, which has a slowly decaying left tail, the
    profile is split with a smooth cutoff into a compactly supported
    near part (paired by honest double quadrature) and a far part whose
    pairing reduces exactly to the homogeneous density -1/(2|y|):

        <F(ln|x|), psi_far> = -(1/2) integral psi_far(y) / |y| dy,

    valid because psi_far vanishes near 0, where the delta term and the
    subtraction in the regularised pairing live.
    """
    if isinstance(psi, ParityFunction):
        if psi.parity == -1:
            # Pairing of an even distribution with an odd function.
            return 0.0
        fpsi = fourier(psi)
        if x_max is None:
            x_max = math.sqrt(48.0 * max(a for _, _, a in psi.terms) / math.pi) + 4.0
        val = _integral_with_log_weight(fpsi, x_max, n_points=n_points)
        if abs(val.imag) > 1e-9 * max(1.0, abs(val.real)):
            raise WindowError(f"pairing has imaginary residue {val.imag:.3e}")
        return float(val.real)

    if isinstance(psi, ShiftedProfile):
        return _pair_log_fourier_profile(psi, n_points=n_points)
    raise TypeError("psi must be a ParityFunction or ShiftedProfile")


def _pair_log_fourier_profile(psi: ShiftedProfile, *, inner: float = 2.0,
                              outer: float = 6.0, n_points: int = 4001,
                              x_max: float = 60.0) -> float:
    """Near/far split pairing for a ShiftedProfile; see pair_log_fourier."""
    def cutoff(y):
        # 1 on [-inner, inner], 0 outside [-outer, outer], C-infinity.
        t = (outer - np.abs(y)) / (outer - inner)
        return cinf_step(t)

    y = np.linspace(-outer, outer, 8193)
    hy = y[1] - y[0]
    near_vals = psi(y) * cutoff(y)

    def f_near(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty(x.shape, dtype=complex)
        for i in range(0, x.size, 512):
            blk = x[i:i + 512]
            phase = np.exp(2j * math.pi * np.outer(blk, y))
            out[i:i + 512] = phase @ near_vals * hy
        return out

    near = _integral_with_log_weight(f_near, x_max, n_points=n_points)
    if abs(near.imag) > 1e-8 * max(1.0, abs(near.real)):
        raise WindowError(f"near pairing imaginary residue {near.imag:.3e}")

    # Far part: |y| >= inner, where psi(y) = f(|1 - y|) with
    # |1 - y| = 1 + t resp. t - 1 on the two tails (t = |y|); the
    # homogeneous reduction has density -1/(2|y|).
    u = np.linspace(math.log(inner) - 1e-9, 14.0, 8001)
    hu = u[1] - u[0]
    t = np.exp(u)
    weight = 1.0 - cutoff(t)
    fv = (psi.f(1.0 + t) + psi.f(np.maximum(t - 1.0, 1e-300))
          * (t > 1.0 + 1e-12)) * weight
    far = -0.5 * float(trapezoid(fv, hu))
    return float(near.real) + far
