from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import complex_rationals, scalars
from weylcalc.scalars import (
    HBAR,
    I,
    IHBAR,
    ONE,
    ZERO,
    ComplexRational,
    Scalar,
    bernoulli_half,
    bernoulli_number,
    euler_number,
    factorial_reciprocal,
    falling_factorial,
    gamma_ratio_negative,
)
from weylcalc.verify import akiyama_tanigawa, bernoulli_poly_at, gamma_ratio_product, seidel_euler


def test_complex_rational_arithmetic():
    z = ComplexRational(Fraction(1, 2), 3)
    w = ComplexRational(-1, Fraction(2, 3))
    assert z * w == ComplexRational(Fraction(-1, 2) - 2, Fraction(1, 3) - 3)
    assert (z / w) * w == z
    assert z.conjugate() == ComplexRational(Fraction(1, 2), -3)
    assert ComplexRational(5) == 5


def test_ihbar_squared_is_minus_hbar_squared():
    assert IHBAR * IHBAR == Scalar.monomial(-1, 2)
    assert I * I == -ONE
    assert IHBAR == I * HBAR
    assert Scalar.ihbar_power(3, 2) == IHBAR**3 * 2


def test_hbar_classical_limit():
    s = ONE * 3 + IHBAR * 5
    assert s.at_hbar_zero() == Scalar.of(3)
    assert s.degree == 1
    assert ZERO.is_zero() and ONE.is_one()


def test_division_by_hbar_dependent_scalar_rejected():
    with pytest.raises((ValueError, ZeroDivisionError, TypeError)):
        ONE / HBAR


@given(scalars, scalars, scalars)
def test_scalar_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a - a == ZERO


@given(scalars, scalars)
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a.conjugate().conjugate() == a


@given(complex_rationals.filter(bool))
def test_complex_inverse(z):
    assert z / z == 1


def test_factorial_reciprocal_vanishes_at_negative_integers():
    assert [factorial_reciprocal(k) for k in (-3, -1, 0, 1, 4)] == [0, 0, 1, 1, Fraction(1, 24)]


@pytest.mark.parametrize("x,k,want", [(5, 0, 1), (5, 2, 20), (3, 3, 6), (3, 4, 0), (-2, 2, 6)])
def test_falling_factorial(x, k, want):
    assert falling_factorial(x, k) == want


# [PAPER] the worked value Gamma(-2)/Gamma(-5) = -60
def test_gamma_ratio_worked_value():
    assert gamma_ratio_negative(2, 3) == -60


# [DERIVED] oracle: Gamma(z + 1) = z Gamma(z) applied factor by factor
@pytest.mark.parametrize("n", range(21))
def test_gamma_ratio_matches_telescoping_product(n):
    for m in range(21):
        assert gamma_ratio_negative(n, m) == gamma_ratio_product(n, m)


def test_gamma_ratio_matches_sympy_residue_ratio():
    # Gamma has simple poles at -n with residue (-1)^n/n!, so the pole ratio is
    # residue(-n)/residue(-n-m).
    for n in range(8):
        for m in range(8):
            ratio = sympy.Rational((-1) ** n, sympy.factorial(n)) / sympy.Rational(
                (-1) ** (n + m), sympy.factorial(n + m)
            )
            assert gamma_ratio_negative(n, m) == Fraction(int(ratio.p), int(ratio.q))


# [DERIVED] oracle: Seidel boustrophedon triangle, second oracle sympy
def test_euler_numbers_against_seidel_and_sympy():
    seidel = seidel_euler(21)
    for u in range(21):
        assert euler_number(u) == seidel[u]
        assert euler_number(u) == int(sympy.euler(u))


def test_seidel_oracle_known_values():
    assert seidel_euler(9) == [1, 0, -1, 0, 5, 0, -61, 0, 1385]


# [DERIVED] oracle: Akiyama-Tanigawa and sympy
def test_bernoulli_numbers_against_akiyama_tanigawa():
    at = akiyama_tanigawa(21)
    assert at[:5] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]
    for u in range(21):
        assert bernoulli_number(u) == at[u]
        if u != 1:
            b = sympy.bernoulli(u)
            assert bernoulli_number(u) == Fraction(int(b.p), int(b.q))


# [DERIVED] oracle: evaluate the Bernoulli polynomial at 1/2 directly
@pytest.mark.parametrize("u", range(21))
def test_bernoulli_at_half(u):
    at = akiyama_tanigawa(21)
    assert bernoulli_half(u) == bernoulli_poly_at(u, Fraction(1, 2), at)
    poly = sympy.bernoulli(u, sympy.Rational(1, 2))
    assert bernoulli_half(u) == Fraction(int(poly.p), int(poly.q))


@given(st.integers(0, 30))
def test_odd_euler_numbers_vanish(u):
    if u % 2:
        assert euler_number(u) == 0
