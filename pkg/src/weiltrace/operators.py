"""Summation operators over dilated lattices and their Dirichlet twists.

The central object is Z f(x) = sum_{n >= 1} f(n x), with inverse
Z^{-1} f(x) = sum mu(n) f(n x), the Euler-product route through
p-smooth indices, and the character-twisted version
L_chi f(x) = sum chi(n) f(n x).  All truncations are certified: a sum
is only reported when the neglected tail is provably below the
requested tolerance, otherwise TailBoundError is raised.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (NonPrimitiveCharacterError, ParityMismatchError,
                     TailBoundError)
from .families import LogGaussian, ParityFunction, TestFunction
from .grids import QuadratureSpec
from .special import zeta, zeta_tail
from .transforms import fourier, mellin


@dataclass(frozen=True)
class TruncationSpec:
    """Caps and certification tolerance for lattice sums."""
    n_max: int = 100_000
    p_max: int = 10_000
    e_max: int = 60
    tail_tol: float = 1e-12

    def __post_init__(self):
        if self.n_max < 2 or self.p_max < 2 or self.e_max < 1:
            raise ValueError("truncation caps must be positive")
        if self.tail_tol <= 0:
            raise ValueError("tail_tol must be positive")


@lru_cache(maxsize=32)
def primes_up_to(n: int) -> tuple[int, ...]:
    """All primes <= n by Eratosthenes sieve."""
    if n < 2:
        return ()
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(math.isqrt(n)) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return tuple(int(p) for p in np.flatnonzero(sieve))


@lru_cache(maxsize=8)
def mobius_up_to(n: int) -> np.ndarray:
    """mu(1), ..., mu(n) as an int8 array of length n + 1 (index 0 unused)."""
    mu = np.ones(n + 1, dtype=np.int8)
    prime = np.ones(n + 1, dtype=bool)
    prime[:2] = False
    for p in range(2, n + 1):
        if prime[p]:
            prime[2 * p::p] = False
            mu[p::p] *= -1
            sq = p * p
            if sq <= n:
                mu[sq::sq] = 0
    return mu


def smooth_numbers(p_max: int, bound: int) -> np.ndarray:
    """Sorted p_max-smooth integers in [1, bound] (all prime factors
    <= p_max)."""
    vals = [1]
    for p in primes_up_to(p_max):
        vals = [v * q for v in vals for q in _prime_powers(p, bound // v)
                if True]
        vals = [v for v in vals if v <= bound]
    return np.array(sorted(vals), dtype=np.int64)


def _prime_powers(p: int, cap: int) -> list[int]:
    out = [1]
    q = p
    while q <= cap:
        out.append(q)
        q *= p
    return out


# ---------------------------------------------------------------------------
# Dirichlet characters
# ---------------------------------------------------------------------------

def _unit_group_generators(d: int) -> list[tuple[int, int]]:
    """Generators (g, order) of (Z/d)^* via CRT over prime powers."""
    gens: list[tuple[int, int]] = []
    for p, e in _factorize(d):
        q = p ** e
        rest = d // q
        if p == 2:
            if e == 1:
                continue
            # (Z/2^e)^* = <-1> x <3> for e >= 3; cyclic <3> = all for e = 2.
            items = [(q - 1, 2)] if e >= 3 else []
            items.append((3, 2 ** (e - 2) if e >= 3 else 2))
            for g, order in items:
                gens.append((_crt_lift(g, q, rest, d), order))
            continue
        g = _primitive_root_prime_power(p, e)
        gens.append((_crt_lift(g, q, rest, d), q - q // p))
    return gens


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    for p in primes_up_to(max(2, int(math.isqrt(n)) + 1)) + (n,):
        if n == 1:
            break
        if n % p:
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    if n > 1:
        out.append((n, 1))
    return out


def _primitive_root_prime_power(p: int, e: int) -> int:
    phi = p - 1
    fac = [q for q, _ in _factorize(phi)]
    g = next(g for g in range(2, p)
             if all(pow(g, phi // q, p) != 1 for q in fac))
    if e == 1:
        return g
    # Lift: g is primitive mod p^e unless g^(p-1) = 1 mod p^2.
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


def _crt_lift(g: int, q: int, rest: int, d: int) -> int:
    """The unit mod d that is g mod q and 1 mod rest."""
    if rest == 1:
        return g % d
    inv = pow(q, -1, rest)
    return (g + q * ((1 - g) * inv % rest)) % d


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character mod d, stored as its value table.

    values[n] = chi(n) for n in [0, d); parity is chi(-1) = +1 or -1;
    index is the position in the deterministic enumeration order of
    characters(d) (the principal character is index 0).
    """
    modulus: int
    values: tuple[complex, ...]
    index: int

    def value(self, n: int) -> complex:
        return self.values[n % self.modulus]

    def value_array(self, n: np.ndarray) -> np.ndarray:
        table = np.asarray(self.values, dtype=complex)
        return table[np.asarray(n, dtype=np.int64) % self.modulus]

    @property
    def parity(self) -> int:
        v = self.values[(-1) % self.modulus]
        return 1 if abs(v - 1.0) < 1e-12 else -1

    @property
    def is_principal(self) -> bool:
        return all(abs(v - 1.0) < 1e-12 or v == 0 for v in self.values)

    @property
    def is_primitive(self) -> bool:
        """True when chi does not factor through any proper divisor of d."""
        d = self.modulus
        if d == 1:
            return True
        if self.is_principal:
            return False
        for p, _ in _factorize(d):
            dd = d // p
            # chi factors through dd iff chi(n) = 1 whenever n = 1 mod dd.
            factors = all(
                abs(self.values[n % d] - 1.0) < 1e-12
                for n in range(1, d, dd) if math.gcd(n, d) == 1)
            if factors:
                return False
        return True

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(
            modulus=self.modulus,
            values=tuple(v.conjugate() for v in self.values),
            index=-1 if self.index < 0 else self.index)

    def gauss_sum(self) -> complex:
        d = self.modulus
        return sum(self.values[a] * cmath.exp(2j * math.pi * a / d)
                   for a in range(1, d))


def characters(d: int) -> list[DirichletCharacter]:
    """All Dirichlet characters mod d, in a deterministic order.

    The order enumerates exponent tuples against the unit-group
    generators lexicographically, so index 0 is always principal.
    """
    gens = _unit_group_generators(d)
    # Discrete logs of every unit against the generator list.
    units = [n for n in range(d) if math.gcd(n, d) == 1]
    logs = {1 % d: tuple(0 for _ in gens)}
    # BFS over products of generators.
    frontier = [1 % d]
    while len(logs) < len(units):
        nxt = []
        for u in frontier:
            base = logs[u]
            for i, (g, order) in enumerate(gens):
                v = (u * g) % d
                if v not in logs:
                    e = list(base)
                    e[i] = (e[i] + 1) % order
                    logs[v] = tuple(e)
                    nxt.append(v)
        frontier = nxt
    orders = [order for _, order in gens]
    out = []
    idx = 0
    for expo in _exponent_tuples(orders):
        vals = [0j] * d
        for u in units:
            ang = sum(expo[i] * logs[u][i] / orders[i]
                      for i in range(len(gens)))
            vals[u] = cmath.exp(2j * math.pi * ang)
        out.append(DirichletCharacter(modulus=d, values=tuple(vals),
                                      index=idx))
        idx += 1
    return out


def _exponent_tuples(orders: list[int]):
    if not orders:
        yield ()
        return
    for head in range(orders[0]):
        for rest in _exponent_tuples(orders[1:]):
            yield (head,) + rest


def primitive_characters(d: int) -> list[DirichletCharacter]:
    return [chi for chi in characters(d) if chi.is_primitive]


def character(d: int, index: int) -> DirichletCharacter:
    chis = characters(d)
    if not 0 <= index < len(chis):
        raise ValueError(f"modulus {d} has {len(chis)} characters")
    return chis[index]


# ---------------------------------------------------------------------------
# Truncated lattice sums with certified tails
# ---------------------------------------------------------------------------

def _loggaussian_tail_bound(f: LogGaussian, x: float, n_from: int) -> float:
    """Upper bound for sum_{n >= n_from} |f(n x)|, valid once the
    summand is decreasing, via the integral comparison
    sum <= f(n_from x) + (1/x) int_{n_from x}^inf f."""
    a, mu, sig = abs(f.amplitude), f.center, f.width
    t0 = n_from * x
    if math.log(t0) < mu:
        raise TailBoundError("tail bound needs the decreasing regime")
    z = (math.log(t0) - mu - sig * sig) / (math.sqrt(2.0) * sig)
    integral = (a / x) * math.sqrt(2.0 * math.pi) * sig \
        * math.exp(mu + 0.5 * sig * sig) * 0.5 * math.erfc(z)
    head = a * math.exp(-0.5 * ((math.log(t0) - mu) / sig) ** 2)
    return head + integral


def _parity_tail_bound(f: ParityFunction, x: float, n_from: int) -> float:
    """Upper bound for sum_{n >= n_from} |f(n x)| when f is a
    Gaussian-polynomial function, via the envelope
    t^k e^{-a pi t^2} <= C_k e^{-a pi t^2 / 2} with
    C_k = (k / (a pi))^{k/2} e^{-k/2}."""
    total = 0.0
    t0 = n_from * x
    for coeff, k, alpha in f.terms:
        c_k = 1.0 if k == 0 else (k / (alpha * math.pi)) ** (0.5 * k) \
            * math.exp(-0.5 * k)
        half = 0.5 * alpha * math.pi
        if half * t0 * t0 > 700.0:
            continue
        env = c_k * math.exp(-half * t0 * t0)
        # head term + integral comparison (decreasing once past the peak)
        total += abs(coeff) * (env + env / (2.0 * half * t0 * x))
    return total


def _term_cap(f, x: float, tr: TruncationSpec) -> int:
    """Smallest N with a certified tail bound sum_{n > N} |f(n x)| below
    tr.tail_tol; TailBoundError when no N <= n_max certifies."""
    if isinstance(f, ParityFunction):
        peak = max(math.sqrt(max(k, 1) / (2.0 * a * math.pi))
                   for _, k, a in f.terms)
        n = max(16, int(math.ceil(peak / x)) + 1)
        while n <= tr.n_max:
            if _parity_tail_bound(f, x, n + 1) < tr.tail_tol:
                return n
            n *= 2
        raise TailBoundError(
            f"cannot certify Gaussian-polynomial tail below "
            f"{tr.tail_tol:.1e} with n_max = {tr.n_max}")
    sup = f.support() if hasattr(f, "support") else None
    if sup is not None:
        return min(tr.n_max, int(math.floor(sup[1] / x)))
    params = f.loggauss_params() if hasattr(f, "loggauss_params") else None
    if params is not None:
        lg = LogGaussian(*params)
        lo = max(1, int(math.ceil(math.exp(lg.center) / x)))
        n = max(lo + 1, 16)
        while n <= tr.n_max:
            if _loggaussian_tail_bound(lg, x, n + 1) < tr.tail_tol:
                return n
            n *= 2
        raise TailBoundError(
            f"cannot certify tail below {tr.tail_tol:.1e} with "
            f"n_max = {tr.n_max}")
    # Generic decaying summand (e.g. the image of a LogGaussian under Z):
    # bound the tail by dyadic blocks, sum_{m > n} |g(m x)| <=
    # sum_k n 2^k |g(2^k n x)| for decreasing |g|, probed until underflow.
    n = 16
    while n <= tr.n_max:
        tail = _dyadic_tail_probe(f, x, n)
        if tail is not None and tail < tr.tail_tol:
            return n
        n *= 2
    raise TailBoundError(
        f"cannot certify generic tail below {tr.tail_tol:.1e} with "
        f"n_max = {tr.n_max}")


def _dyadic_tail_probe(f, x: float, n_from: int) -> float | None:
    """Dyadic-block tail bound for sum_{m > n_from} |f(m x)|, or None
    when |f| is not yet decreasing at the probe points."""
    total = 0.0
    n = n_from
    prev = math.inf
    for _ in range(60):
        v = float(np.max(np.abs(np.asarray(f(np.array([n * x]))))))
        if v > prev:
            return None
        total += n * v
        if n * v < 1e-30:
            return total
        prev = v
        n *= 2
    return None


def _lattice_sum(f, x: float, tr: TruncationSpec,
                 weights: np.ndarray | None = None) -> complex:
    """sum_n w_n f(n x) for n = 1..N with N chosen by _term_cap;
    ascending-n order, numpy pairwise summation (deterministic)."""
    n_cap = _term_cap(f, x, tr)
    if n_cap < 1:
        return 0.0
    n = np.arange(1, n_cap + 1, dtype=np.int64)
    vals = np.asarray(f(n * x), dtype=complex)
    if weights is not None:
        vals = vals * weights[:n_cap]
    return complex(np.sum(vals))


def apply_Z(f, x: float, tr: TruncationSpec | None = None) -> complex:
    """Z f(x) = sum_{n>=1} f(n x), truncated with a certified tail."""
    tr = tr or TruncationSpec()
    return _lattice_sum(f, x, tr)


def apply_Z_inverse(f, x: float, tr: TruncationSpec | None = None) -> complex:
    """Z^{-1} f(x) = sum_{n>=1} mu(n) f(n x)."""
    tr = tr or TruncationSpec()
    mu = mobius_up_to(tr.n_max).astype(float)[1:]
    return _lattice_sum(f, x, tr, weights=mu)


def z_image(f, tr: TruncationSpec | None = None, *,
            inverse: bool = False):
    """Z f (or Z^{-1} f) as a vectorised callable, for composing the
    lattice operators: the whole (index, argument) grid is evaluated in
    one call to f, so e.g. apply_Z_inverse(z_image(f), x) runs at numpy
    speed instead of one lattice sum per argument."""
    tr = tr or TruncationSpec()

    def image(y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        order = np.argsort(y)
        out = np.empty(y.shape, dtype=complex)
        # Chunks of nearby arguments share one index cap (the cap is
        # driven by the smallest argument in the chunk).
        for start in range(0, y.size, 256):
            sel = order[start:start + 256]
            block = y[sel]
            n_cap = _term_cap(f, float(block.min()), tr)
            n = np.arange(1, n_cap + 1, dtype=float)
            vals = np.asarray(f(np.outer(n, block)), dtype=complex)
            if inverse:
                vals = vals * mobius_up_to(n_cap).astype(float)[1:, None]
            out[sel] = vals.sum(axis=0)
        return out if np.any(out.imag) else out.real

    return image


def euler_product_Z(f, x: float, tr: TruncationSpec | None = None, *,
                    inverse: bool = False) -> complex:
    """Z f(x) restricted to p_max-smooth indices, evaluated through the
    Euler factorisation as a depth-first product over primes of
    (sum_{e <= e_max} lambda_{p^e}); with inverse=True the factors are
    (1 - lambda_p), reproducing the Moebius signs.

    Note this is the smooth part only: indices with a prime factor
    above p_max are genuinely absent, so agreement with apply_Z is
    limited by f at the first non-smooth index, not by the tail
    tolerance.
    """
    tr = tr or TruncationSpec()
    n_cap = _term_cap(f, x, tr)
    items: list[tuple[int, float]] = [(1, 1.0)]
    for p in primes_up_to(min(tr.p_max, n_cap)):
        grown = []
        for m, sign in items:
            q = m * p
            e = 1
            while q <= n_cap and e <= tr.e_max:
                grown.append((q, -sign if inverse else sign))
                if inverse:
                    break
                q *= p
                e += 1
        items.extend(grown)
    idx = np.array([m for m, _ in items], dtype=float)
    sgn = np.array([s for _, s in items])
    vals = np.asarray(f(idx * x), dtype=complex)
    return complex(np.sum(sgn * vals))


def apply_L_chi(chi: DirichletCharacter, f, x: float,
                tr: TruncationSpec | None = None) -> complex:
    """L_chi f(x) = sum_{n>=1} chi(n) f(n x).

    When f is a ParityFunction its parity must match chi(-1); the
    mismatch is a structural error, not a numerical one.
    """
    tr = tr or TruncationSpec()
    if isinstance(f, ParityFunction) and f.parity != chi.parity:
        raise ParityMismatchError(
            f"character parity {chi.parity} vs function parity {f.parity}")
    n_cap = _term_cap(f, x, tr)
    n = np.arange(1, n_cap + 1, dtype=np.int64)
    vals = np.asarray(f(n.astype(float) * x), dtype=complex)
    return complex(np.sum(vals * chi.value_array(n)))


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------

def poisson_check(f: ParityFunction, x: float,
                  tr: TruncationSpec | None = None) -> float:
    """Residual of the Poisson summation identity in the form
        f(0)/2 + Z f(x) = x^{-1} (F f)(0)/2 + x^{-1} Z (F f)(1/x).
    f must be even."""
    if f.parity != 1:
        raise ParityMismatchError("Poisson check needs an even function")
    tr = tr or TruncationSpec()
    ff = fourier(f)
    lhs = 0.5 * f.at_zero() + apply_Z(f, x, tr)
    rhs = (0.5 * ff.at_zero() + apply_Z(ff, 1.0 / x, tr)) / x
    return abs(lhs - rhs)


def zspectral_check(f: TestFunction, s: complex,
                    tr: TruncationSpec | None = None,
                    q: QuadratureSpec | None = None) -> float:
    """Residual of M(Z f)(s) = zeta(s) M(f)(s) for Re s > 1.

    The left side is assembled termwise: M(Z f)(s) = sum n^{-s} M f(s),
    with the Dirichlet series summed to an independent truncation point
    and completed by the Euler-Maclaurin tail; the right side calls the
    zeta evaluator.  Both share the quadrature value of M f(s), so the
    check isolates the operator identity rather than quadrature error.
    """
    s = complex(s)
    if s.real <= 1.0:
        raise ValueError("identity check needs Re s > 1")
    tr = tr or TruncationSpec()
    fhat = mellin(f, s, q).value
    m = max(50, 2 * math.ceil(abs(s.imag)))
    dirichlet = sum(n ** (-s) for n in range(1, m + 1)) + zeta_tail(m, s)
    return abs(dirichlet * fhat - zeta(s) * fhat)


def twisted_poisson_check(chi: DirichletCharacter, f: ParityFunction,
                          x: float, tr: TruncationSpec | None = None,
                          ) -> tuple[float, complex]:
    """Residual of the character-twisted Poisson identity
        L_chi f(x) = kappa sqrt(d) (J L_{conj chi} F f)(d x),
    i.e. L_chi f(x) = kappa / (sqrt(d) x) sum_n conj(chi)(n) (F f)(n/(d x)),
    with root number kappa = chi(-1) g(chi) / sqrt(d), |kappa| = 1.

    chi must be primitive and f's parity must match chi(-1).
    Returns (residual, kappa).
    """
    tr = tr or TruncationSpec()
    if not chi.is_primitive:
        raise NonPrimitiveCharacterError(
            f"character {chi.index} mod {chi.modulus} is not primitive")
    if f.parity != chi.parity:
        raise ParityMismatchError(
            f"character parity {chi.parity} vs function parity {f.parity}")
    d = chi.modulus
    kappa = chi.parity * chi.gauss_sum() / math.sqrt(d)
    ff = fourier(f)
    lhs = apply_L_chi(chi, f, x, tr)
    dual = apply_L_chi(chi.conjugate(), ff, 1.0 / (d * x), tr)
    rhs = kappa / (math.sqrt(d) * x) * dual
    return abs(lhs - rhs), kappa
