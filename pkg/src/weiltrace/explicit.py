"""The explicit formula: spectral side, prime terms, archimedean term.

The identity checked here is
    sum_z ord(z) (M f)(z) = sum_p W_p(f) + W_inf(f),
where z runs over the poles (order +1 at 0 and 1) and critical-line
zeros (order -1 each) of the completed zeta function, W_p collects the
prime-power terms ln(p) [f(p^e) + p^{-e} f(p^{-e})], and W_inf is the
archimedean local term.

W_inf is computed by two genuinely different routes:
  * duality: -<F(ln|x|), psi> with psi(y) = f(|1-y|), through the
    regularised pairing in the transforms module (primary);
  * subtracted principal value: the symmetric-cut limit of
    integral f(x) (|1-x|^{-1} + (1+x)^{-1}) dx plus c_inf f(1), where
    the constant c_inf is measured once against the duality route on a
    fixed reference function and then transferred (secondary).
Their disagreement is monitored and fed into the error budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceededError, DisagreementError
from .families import LogGaussian, TestFunction
from .grids import QuadratureSpec, trapezoid
from .operators import TruncationSpec, primes_up_to
from .transforms import ShiftedProfile, mellin, pair_log_fourier
from .zeros import ZeroTable


def _mellin_value(f, s: complex, q: QuadratureSpec | None = None) -> complex:
    closed = getattr(f, "mellin_closed", None)
    if closed is not None:
        try:
            return complex(closed(s))
        except NotImplementedError:
            pass
    return mellin(f, s, q).value


def W_p(f, p: int, tr: TruncationSpec | None = None) -> float:
    """Prime-local term ln(p) sum_e [f(p^e) + p^{-e} f(p^{-e})]."""
    tr = tr or TruncationSpec()
    lp = math.log(p)
    total = 0.0
    for e in range(1, tr.e_max + 1):
        pe = float(p) ** e
        if not math.isfinite(pe):
            break
        term = f(pe) + f(1.0 / pe) / pe
        total += term
        if pe > 1e6 and abs(term) < 1e-302:
            break
    return lp * total


def _prime_tail_bound(f, p_from: float, *, n_grid: int = 2001) -> float:
    """Upper bound for sum over primes p > p_from of
    ln(p) [f(p) + f(1/p)/p] (higher powers are dominated separately),
    via comparison with the integral over all reals above p_from.

    Valid once g(t) = ln(t) (|f(t)| + |f(1/t)|/t) is decreasing past
    p_from, which holds for the rapidly decaying families here.
    """
    u = np.linspace(math.log(p_from), math.log(p_from) + 60.0, n_grid)
    t = np.exp(u)
    g = np.log(t) * (np.abs(f(t)) + np.abs(f(1.0 / t)) / t)
    # sum_{p > P} g(p) <= g(P) + int_P^inf g(t) dt  (decreasing g);
    # the e >= 2 powers of such p are dominated by the same bound.
    integral = float(trapezoid(g * t, u[1] - u[0]))
    head = float(np.max(g[:1]))
    return 2.0 * (head + integral)


def W_prime_total(f, tr: TruncationSpec | None = None,
                  ) -> tuple[float, float]:
    """(sum of W_p over p <= p_max, certified tail bound)."""
    tr = tr or TruncationSpec()
    total = 0.0
    for p in primes_up_to(tr.p_max):
        total += W_p(f, p, tr)
    return total, _prime_tail_bound(f, float(tr.p_max))


def pv_regularised(f, *, n_inner: int = 8193, n_outer: int = 6001) -> float:
    """The symmetric-cut principal value
        lim_{eps -> 0} [ integral_{|1-x| > eps} f~(x) / |1-x| dx
                         + 2 f(1) ln(eps) ],
    where f~ is the even extension of f; computed in the subtracted
    form (no explicit eps), with one Richardson step on the inner
    trapezoid so the quadrature error is O(h^4)."""
    def inner(n):
        t = np.linspace(0.0, 1.0, n)
        vals = np.empty_like(t)
        vals[0] = 0.0
        tm = t[1:]
        vals[1:] = (f(np.maximum(1.0 - tm, 1e-300)) + f(1.0 + tm)
                    - 2.0 * f(1.0)) / tm
        return float(trapezoid(vals, t[1] - t[0]))

    fine, coarse = inner(n_inner), inner((n_inner + 1) // 2)
    inner_val = fine + (fine - coarse) / 3.0
    u = np.linspace(0.0, 60.0, n_outer)
    t = np.exp(u)
    outer_vals = f(1.0 + t) + np.where(t > 1.0, f(np.maximum(t - 1.0, 1e-300)), 0.0)
    outer_val = float(trapezoid(outer_vals, u[1] - u[0]))
    return inner_val + outer_val


_REFERENCE = LogGaussian(1.0, 0.0, 1.0)
_C_INF_CACHE: dict[str, float] = {}


def archimedean_constant() -> float:
    """The measured constant c_inf in the secondary route
    W_inf(f) = (1/2) pv_regularised(f) + c_inf f(1): calibrated once on
    a fixed reference function against the duality route and cached."""
    if "c_inf" not in _C_INF_CACHE:
        duality = -pair_log_fourier(ShiftedProfile(_REFERENCE))
        _C_INF_CACHE["c_inf"] = duality \
            - 0.5 * pv_regularised(_REFERENCE)
    return _C_INF_CACHE["c_inf"]


def W_infty(f, *, cross_check_tol: float = 1e-5,
            ) -> tuple[float, float, float]:
    """Archimedean term by the duality route, cross-checked against the
    calibrated principal-value route.

    Returns (value, quadrature_error_estimate, route_disagreement);
    raises DisagreementError when the two routes differ by more than
    cross_check_tol (scaled by the size of the value).
    """
    psi = ShiftedProfile(f)
    value = -pair_log_fourier(psi)
    half = -pair_log_fourier(psi, n_points=2001)
    est = abs(value - half)
    secondary = 0.5 * pv_regularised(f) + archimedean_constant() * f(1.0)
    disagreement = abs(value - secondary)
    if disagreement > cross_check_tol * max(1.0, abs(value)):
        raise DisagreementError(
            f"archimedean routes disagree: duality {value!r} vs "
            f"principal-value {secondary!r}")
    return value, est, disagreement


def spectral_parts(f, zt: ZeroTable, q: QuadratureSpec | None = None,
                   ) -> tuple[float, float, float]:
    """(pole_contribution, zero_contribution, certified_bound) of the
    spectral side: poles of the completed zeta at 0 and 1 enter with
    order +1, table zeros 1/2 +- i gamma with order -1 each.  The bound
    covers the zeros above the table height plus the sensitivity of the
    zero sum to the table's ordinate precision."""
    poles = _mellin_value(f, 0.0, q) + _mellin_value(f, 1.0, q)
    zero_sum = 0.0 + 0.0j
    sens = 0.0
    for g in zt.ordinates:
        mv = _mellin_value(f, complex(0.5, g), q)
        zero_sum += 2.0 * mv.real
        sens += 2.0 * abs(mv) * (1.0 + g) * zt.precision
    bound = _zero_tail_bound(f, zt.height_bound) + sens
    for part in (poles, zero_sum):
        if abs(part.imag) > 1e-10 * max(1.0, abs(part.real)):
            raise DisagreementError(
                f"spectral side has imaginary residue {part.imag:.3e}")
    return float(poles.real), float(zero_sum.real), bound


def spectral_side(f, zt: ZeroTable, q: QuadratureSpec | None = None,
                  ) -> tuple[float, float]:
    """(M f)(0) + (M f)(1) - sum over zeros 1/2 +- i gamma of (M f),
    with a certified bound for the zeros above the table height.

    Returns (value, tail_plus_precision_bound).
    """
    poles, zero_sum, bound = spectral_parts(f, zt, q)
    return poles - zero_sum, bound


def _zero_tail_bound(f, height: float) -> float:
    """Bound for the neglected zeros above the table height, using the
    critical-line envelope of |M f| and twice the asymptotic density."""
    params = f.loggauss_params() if hasattr(f, "loggauss_params") else None
    if params is None:
        # Fall back: sample |M f(1/2 + it)| and require it negligible.
        tail = abs(_mellin_value(f, complex(0.5, height)))
        return 1e3 * tail
    a, mu, sig = params
    amp = abs(a) * math.sqrt(2.0 * math.pi) * sig \
        * math.exp(0.5 * mu + 0.125 * sig * sig)
    expo = -0.5 * sig * sig * height * height
    if expo < -700.0:
        return 0.0
    density = math.log(max(height, 3.0))  # > ln(T/2pi)/2pi, generous
    return 4.0 * amp * density * math.exp(expo) \
        * (1.0 / (sig * sig * height) + 1.0)


@dataclass(frozen=True)
class ExplicitFormulaReport:
    """Both sides of the explicit formula and the certified error
    budget of every ingredient."""
    spectral_side: float
    pole_contribution: float
    zero_contribution: float
    prime_side: float
    W_p_total: float
    W_infty: float
    residual: float
    budgets: dict = field(default_factory=dict)
    c_inf: float = 0.0

    @property
    def total_budget(self) -> float:
        return sum(self.budgets.values())

    def as_dict(self) -> dict:
        return {
            "spectral_side": self.spectral_side,
            "pole_contribution": self.pole_contribution,
            "zero_contribution": self.zero_contribution,
            "prime_side": self.prime_side,
            "W_p_total": self.W_p_total,
            "W_infty": self.W_infty,
            "residual": self.residual,
            "budgets": dict(self.budgets),
            "total_budget": self.total_budget,
            "c_inf": self.c_inf,
        }


def verify_explicit_formula(f, zt: ZeroTable,
                            tr: TruncationSpec | None = None,
                            q: QuadratureSpec | None = None, *,
                            budget_check: bool = True,
                            ) -> ExplicitFormulaReport:
    """Evaluate both sides and certify |spectral - geometric| against
    the accumulated error budget. BudgetExceededError when the residual
    is larger than the budget can explain."""
    tr = tr or TruncationSpec()
    poles, zero_sum, spec_bound = spectral_parts(f, zt, q)
    spec_val = poles - zero_sum
    prime_val, prime_bound = W_prime_total(f, tr)
    arch_val, arch_est, arch_dis = W_infty(f)
    residual = abs(spec_val - prime_val - arch_val)
    budgets = {
        "zero_tail_and_precision": spec_bound,
        "prime_tail": prime_bound,
        "archimedean_quadrature": 4.0 * arch_est + 1e-9,
        "route_disagreement": arch_dis,
        "roundoff": 1e-11 * (abs(spec_val) + abs(prime_val)
                             + abs(arch_val) + 1.0),
    }
    report = ExplicitFormulaReport(
        spectral_side=spec_val, pole_contribution=poles,
        zero_contribution=zero_sum, prime_side=prime_val + arch_val,
        W_p_total=prime_val, W_infty=arch_val, residual=residual,
        budgets=budgets, c_inf=archimedean_constant())
    if budget_check and residual > report.total_budget:
        raise BudgetExceededError(
            f"residual {residual:.3e} exceeds certified budget "
            f"{report.total_budget:.3e}")
    return report
