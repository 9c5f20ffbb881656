import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weiltrace import (LogGaussian, NonPrimitiveCharacterError,
                       ParityMismatchError, TruncationSpec, apply_L_chi,
                       apply_Z, apply_Z_inverse, character, characters,
                       euler_product_Z, gaussian_even, gaussian_odd,
                       mobius_up_to, poisson_check, primes_up_to,
                       primitive_characters, scale, twisted_poisson_check,
                       zeta, zspectral_check)
from weiltrace.operators import smooth_numbers, z_image


def test_primes_up_to():
    assert primes_up_to(30) == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)
    assert len(primes_up_to(100)) == 25
    assert len(primes_up_to(10000)) == 1229


def test_mobius_up_to():
    mu = mobius_up_to(20)
    expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1,
              -1, 0, -1, 1, 1, 0, -1, 0, -1, 0]
    assert list(mu[1:21]) == expect


def test_smooth_numbers():
    sm = smooth_numbers(3, 50)
    assert list(sm) == [1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27, 32, 36, 48]


def test_apply_Z_against_direct_sum():
    f = LogGaussian(1.0, 0.0, 1.0)
    for x in (0.5, 1.0, 2.0):
        n = np.arange(1, 200001, dtype=float)
        direct = float(np.sum(f(n * x)))
        assert apply_Z(f, x) == pytest.approx(direct, abs=1e-12)


def test_apply_Z_scaling_equivariance():
    # Z commutes with dilation: Z(f(./t))(x) = (Zf)(x/t)
    f = LogGaussian(1.0, 0.0, 0.8)
    for t, x in ((2.0, 1.0), (0.5, 3.0), (1.7, 0.4)):
        lhs = apply_Z(scale(f, t), x)
        rhs = apply_Z(f, x / t)
        assert lhs == pytest.approx(rhs, abs=1e-12)


def test_mobius_inversion_both_ways():
    f = LogGaussian(1.0, 0.0, 1.0)
    tr = TruncationSpec(tail_tol=1e-13)
    for x in (0.7, 1.0, 1.9):
        zf = z_image(f, tr)
        assert apply_Z_inverse(zf, x, tr) == pytest.approx(f(x), abs=1e-10)
        zif = z_image(f, tr, inverse=True)
        assert apply_Z(zif, x, tr) == pytest.approx(f(x), abs=1e-10)


def test_euler_product_matches_smooth_sum():
    f = LogGaussian(1.0, 0.0, 1.0)
    tr = TruncationSpec(p_max=100)
    for x in (0.8, 1.5):
        got = euler_product_Z(f, x, tr)
        sm = smooth_numbers(100, 2_000_000).astype(float)
        expect = float(np.sum(f(sm * x)))
        assert got == pytest.approx(expect, abs=1e-11)


def test_euler_product_inverse_squarefree():
    f = LogGaussian(1.0, 0.0, 1.0)
    tr = TruncationSpec(p_max=1000)
    x = 1.3
    got = euler_product_Z(f, x, tr, inverse=True)
    mu = mobius_up_to(100000).astype(float)
    n = np.arange(0, 100001, dtype=float)
    expect = float(np.sum(mu[1:] * np.asarray(f(n[1:] * x))))
    # difference only from non-1000-smooth squarefree indices, tiny here
    assert got == pytest.approx(expect, abs=1e-9)


# ---------------------------------------------------------------------------
# Dirichlet characters
# ---------------------------------------------------------------------------

def test_character_group_sizes():
    for d, n in ((3, 2), (4, 2), (5, 4), (7, 6), (8, 4), (12, 4)):
        assert len(characters(d)) == n


def test_character_orthogonality():
    for d in (5, 7, 12):
        for chi in characters(d):
            total = sum(chi.value(a) for a in range(1, d + 1))
            if chi.is_principal:
                assert total == pytest.approx(
                    sum(1 for a in range(1, d + 1) if math.gcd(a, d) == 1))
            else:
                assert abs(total) < 1e-12


def test_character_multiplicativity():
    chi = character(7, 2)
    for a in range(1, 7):
        for b in range(1, 7):
            assert chi.value(a * b) == pytest.approx(
                chi.value(a) * chi.value(b), abs=1e-13)


def test_gauss_sum_modulus():
    for d in (3, 4, 5, 7):
        for chi in primitive_characters(d):
            assert abs(chi.gauss_sum()) == pytest.approx(
                math.sqrt(d), abs=1e-12)


def test_gauss_sum_mod4_oracle():
    # g(chi_4) = sum chi(a) e^{2 pi i a / 4} = i - (-i) = 2i
    chi = character(4, 1)
    assert chi.gauss_sum() == pytest.approx(2j, abs=1e-13)


def test_character_parity():
    assert character(4, 1).parity == -1    # chi(-1) = chi(3) = -1
    assert character(5, 2).parity == +1    # the quadratic character mod 5


def test_principal_not_primitive():
    chi0 = character(5, 0)
    assert chi0.is_principal and not chi0.is_primitive


# ---------------------------------------------------------------------------
# summation identities
# ---------------------------------------------------------------------------

def test_poisson_gauss2():
    g = gaussian_even()
    for x in (0.25, 0.5, 1.0, 2.0, 4.0):
        assert poisson_check(g, x) < 1e-12


def test_zspectral():
    f = LogGaussian(1.0, 0.0, 1.0)
    for s in (2.0, complex(1.5, 10.0), complex(3.0, -20.0)):
        assert zspectral_check(f, s) < 1e-9


def test_apply_L_chi_parity_mismatch():
    chi = character(4, 1)           # odd character
    with pytest.raises(ParityMismatchError):
        apply_L_chi(chi, gaussian_even(), 1.0)


def test_twisted_poisson_all_moduli():
    for d in (3, 4, 5, 7):
        for chi in primitive_characters(d):
            f = gaussian_even() if chi.parity == 1 else gaussian_odd()
            for x in (0.5, 1.0, 2.0):
                res, kappa = twisted_poisson_check(chi, f, x)
                assert res < 1e-9
                assert abs(abs(kappa) - 1.0) < 1e-12


def test_twisted_poisson_requires_primitive():
    with pytest.raises(NonPrimitiveCharacterError):
        twisted_poisson_check(character(4, 0), gaussian_even(), 1.0)
