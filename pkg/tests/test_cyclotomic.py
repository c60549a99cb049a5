import cmath
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from seifertkit.cyclotomic import Cyclotomic, cyclotomic_polynomial

N = 840


@pytest.mark.parametrize("n", list(range(1, 61)) + [105, 210, 420, 840])
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in expected]


def test_roots_of_unity_relations():
    one = Cyclotomic.scalar(1, N)
    zeta = Cyclotomic.root(1, N)
    assert zeta ** N == one
    assert zeta ** (N // 2) == -one
    assert sum((Cyclotomic.root(k, N) for k in range(1, 7)), Cyclotomic.scalar(1, N)).is_zero() is False
    # the seventh roots sum to zero
    total = Cyclotomic.scalar(0, N)
    for k in range(7):
        total = total + Cyclotomic.root(k * N // 7, N)
    assert total.is_zero()


def test_gaussian_and_conjugate():
    z = Cyclotomic.gaussian(Fraction(1, 2), Fraction(-3, 4), N)
    assert complex(z) == pytest.approx(0.5 - 0.75j)
    assert z * z.conjugate() == Cyclotomic.scalar(Fraction(13, 16), N)
    assert abs(z) == pytest.approx(math.sqrt(13) / 4)


def test_mixed_orders_lift():
    a = Cyclotomic.root(1, 4)
    b = Cyclotomic.root(1, 6)
    assert complex(a * b) == pytest.approx(cmath.exp(2j * math.pi * (1 / 4 + 1 / 6)))
    assert (a * a + 1).is_zero()


def test_equality_with_scalars():
    assert Cyclotomic.scalar(3, N) == 3
    assert Cyclotomic.root(0, N) == 1
    assert Cyclotomic.root(1, N) != 1


exps = st.integers(0, N - 1)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=12)
elements = st.lists(st.tuples(exps, coeffs), max_size=4).map(
    lambda ts: sum((Cyclotomic.scalar(c, N) * Cyclotomic.root(k, N) for k, c in ts), Cyclotomic.scalar(0, N)))


@given(elements, elements)
def test_arithmetic_agrees_with_complex(a, b):
    assert complex(a + b) == pytest.approx(complex(a) + complex(b), abs=1e-9)
    assert complex(a * b) == pytest.approx(complex(a) * complex(b), abs=1e-9)
    assert complex(a.conjugate()) == pytest.approx(complex(a).conjugate(), abs=1e-9)


@given(elements)
def test_is_zero_agrees_with_numeric_value(a):
    # a nonzero element of the field has a nonzero complex value
    assert a.is_zero() == (abs(complex(a)) < 1e-9)
    assert (a - a).is_zero()
