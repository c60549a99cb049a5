"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are kept sparse in the group ring Q[x]/(x^N - 1), as integer
numerators indexed by exponents mod N over one shared denominator.
Products of roots of unity stay single terms, which keeps the local-model
identities cheap.  Equality is decided in the field itself: a nonzero
group-ring difference is reduced modulo the N-th cyclotomic polynomial
before comparing with zero.
"""

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, pi


def _polydiv_exact(num, den):
    """Quotient of integer polynomials (low degree first), den monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Integer coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _lcm(a, b):
    return a * b // gcd(a, b)


class Cyclotomic:
    """``sum(num[k] * zeta**k) / den`` with integer numerators."""

    __slots__ = ("num", "den", "order")

    def __init__(self, terms, order, den=1):
        self.order = order
        num = {}
        for k, c in terms.items():
            if c:
                k %= order
                num[k] = num.get(k, 0) + c
        if any(isinstance(c, Fraction) for c in num.values()):
            common = 1
            for c in num.values():
                common = _lcm(common, Fraction(c).denominator)
            num = {k: int(c * common) for k, c in num.items()}
            den *= common
        num = {k: c for k, c in num.items() if c}
        g = den
        for c in num.values():
            g = gcd(g, c)
            if g == 1:
                break
        if den < 0:
            g = -g
        if g not in (0, 1):
            num = {k: c // g for k, c in num.items()}
            den //= g
        self.num = num
        self.den = den if num else 1

    @classmethod
    def _raw(cls, num, den, order):
        return cls(num, order, den)

    @property
    def terms(self):
        return {k: Fraction(c, self.den) for k, c in self.num.items()}

    @classmethod
    def root(cls, k, order):
        """zeta_order ** k"""
        return cls({k: 1}, order)

    @classmethod
    def scalar(cls, c, order):
        return cls({0: c}, order)

    @classmethod
    def gaussian(cls, re, im, order):
        """re + i*im with rational parts; needs 4 | order."""
        if order % 4:
            raise ValueError("i is not in Q(zeta_N) for 4 not dividing N")
        return cls({0: Fraction(re), order // 4: Fraction(im)}, order)

    def _lift(self, order):
        if order == self.order:
            return self
        step = order // self.order
        return Cyclotomic._raw({k * step: c for k, c in self.num.items()}, self.den, order)

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            n = _lcm(self.order, other.order)
            return self._lift(n), other._lift(n)
        if isinstance(other, (int, Fraction)):
            return self, Cyclotomic.scalar(other, self.order)
        return NotImplemented, NotImplemented

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        num = {k: c * b.den for k, c in a.num.items()}
        for k, c in b.num.items():
            num[k] = num.get(k, 0) + c * a.den
        return Cyclotomic._raw(num, a.den * b.den, a.order)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw({k: -c for k, c in self.num.items()}, self.den, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        n = a.order
        num = {}
        for k1, c1 in a.num.items():
            for k2, c2 in b.num.items():
                k = (k1 + k2) % n
                num[k] = num.get(k, 0) + c1 * c2
        return Cyclotomic._raw(num, a.den * b.den, n)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            if len(self.num) != 1:
                raise ZeroDivisionError("only single-term elements are inverted exactly")
            ((k, c),) = self.num.items()
            return Cyclotomic({-k * -e: Fraction(self.den, c) ** -e}, self.order)
        result = Cyclotomic.scalar(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conjugate(self):
        return Cyclotomic._raw({-k: c for k, c in self.num.items()}, self.den, self.order)

    def is_zero(self):
        if not self.num:
            return True
        phi = cyclotomic_polynomial(self.order)
        deg = len(phi) - 1
        coeffs = [0] * self.order
        for k, c in self.num.items():
            coeffs[k] = c
        nz = [(j, d) for j, d in enumerate(phi[:-1]) if d]
        for i in range(self.order - 1, deg - 1, -1):
            c = coeffs[i]
            if c:
                shift = i - deg
                for j, d in nz:
                    coeffs[shift + j] -= c * d
                coeffs[i] = 0
        return not any(coeffs[:deg])

    def __eq__(self, other):
        if isinstance(other, (Cyclotomic, int, Fraction)):
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None

    def __complex__(self):
        total = sum((c * cmath.exp(2j * pi * k / self.order) for k, c in self.num.items()), 0j)
        return total / self.den

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        body = " + ".join(f"{c}*z^{k}" for k, c in sorted(self.terms.items())) or "0"
        return f"Cyclotomic({body}; N={self.order})"
