"""Fiber characters at fixed points, the twist divisor, and degree bookkeeping.

Over an exceptional fiber of type (p, q) the local model is the quotient of
a trivial circle bundle by the p-th roots of unity.  In the trivializing
coordinates ``(v, w)`` a root ``xi`` moves the base coordinate by ``w -> xi w``
and the fiber coordinate by ``v -> xi**k v`` with ``k = q**-1 mod p``.  That
``k`` is the fiber exponent; twisting by ``O(sum k_i P_i)`` cancels it.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from . import local_model as lm
from .errors import AmbiguousExponent, LengthMismatch, NonIntegralPullback, NonInvertible
from .symbol import euler_number


@dataclass(frozen=True)
class FiberRepDatum:
    p: int
    q_exp: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"isotropy order must be at least 2, got {self.p}")
        if not 0 <= self.q_exp < self.p:
            raise ValueError(f"exponent {self.q_exp} not in [0, {self.p})")


@dataclass(frozen=True)
class TwistDivisor:
    coefficients: tuple
    orders: tuple

    def __post_init__(self):
        if len(self.coefficients) != len(self.orders):
            raise LengthMismatch("one coefficient per cone point")
        for c, p in zip(self.coefficients, self.orders):
            if not 0 <= c < p:
                raise ValueError(f"twist coefficient {c} not in [0, {p})")


@dataclass(frozen=True)
class DescentReport:
    fiber_data: tuple
    twist: TwistDivisor
    residuals: tuple
    pullback_euler: int
    degree: int
    twisted_degree: int
    descended_degree: Fraction
    descended_degree_ok: bool

    def to_dict(self):
        return {
            "fiber_data": [{"p": f.p, "q_exp": f.q_exp} for f in self.fiber_data],
            "twist": list(self.twist.coefficients),
            "residuals": list(self.residuals),
            "pullback_euler": self.pullback_euler,
            "degree": self.degree,
            "twisted_degree": self.twisted_degree,
            "descended_degree": str(self.descended_degree),
            "descended_degree_ok": self.descended_degree_ok,
        }

    @classmethod
    def from_dict(cls, data):
        fiber = tuple(FiberRepDatum(f["p"], f["q_exp"]) for f in data["fiber_data"])
        return cls(
            fiber_data=fiber,
            twist=TwistDivisor(tuple(data["twist"]), tuple(f.p for f in fiber)),
            residuals=tuple(data["residuals"]),
            pullback_euler=data["pullback_euler"],
            degree=data["degree"],
            twisted_degree=data["twisted_degree"],
            descended_degree=Fraction(data["descended_degree"]),
            descended_degree_ok=data["descended_degree_ok"],
        )


def fiber_exponent(p, q):
    try:
        return pow(q, -1, p)
    except ValueError:
        raise NonInvertible(f"{q} is not invertible mod {p}") from None


def fiber_exponents_from_symbol(s):
    out = []
    for p, q in s.exceptional:
        if p < 2:
            raise ValueError("symbol must be normalized (no p = 1 fibers)")
        out.append(FiberRepDatum(p, fiber_exponent(p, q)))
    return out


def numeric_exponent_oracle(m, seed=0, eps=1e-9):
    """Read the fiber exponent off the floating-point local model.

    Trivialize a sample point and its image under a primitive p-th root
    ``xi``, then match the ratio of circle coordinates against ``xi**k``.
    """
    if m.p < 2:
        raise ValueError("the oracle needs p >= 2")
    rng = random.Random(seed)
    t = lm.random_ftilde_point(m, rng)
    while abs(t.z) < 0.1:
        t = lm.random_ftilde_point(m, rng)
    xi = lm.primitive_root(m.p)
    v, w = lm.trivialize(m, t)
    v2, w2 = lm.trivialize(m, lm.mu_p_action(m, xi, t))
    if abs(w2 - xi * w) > eps:
        raise AmbiguousExponent(f"base coordinate did not rotate by xi (defect {abs(w2 - xi * w):.3g})")
    ratio = v2 / v
    matches = [k for k in range(m.p) if abs(ratio - xi ** k) <= eps]
    if len(matches) != 1:
        raise AmbiguousExponent(f"ratio {ratio} matches exponents {matches}")
    return matches[0]


def compute_twist(data):
    return TwistDivisor(tuple(f.q_exp for f in data), tuple(f.p for f in data))


def residual_exponents(data, twist):
    if len(data) != len(twist.coefficients):
        raise LengthMismatch(f"{len(data)} fiber data vs {len(twist.coefficients)} twist coefficients")
    return [(f.q_exp - c) % f.p for f, c in zip(data, twist.coefficients)]


def pullback_euler(s, d):
    """Euler number of the circle bundle pulled back along a degree-d cover."""
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    value = d * euler_number(s)
    if value.denominator != 1:
        raise NonIntegralPullback(f"{d} * e = {value} is not an integer")
    return value.numerator


def descent_degree_check(total_degree, d):
    """``(total_degree / d, d divides total_degree)``."""
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    return Fraction(total_degree, d), total_degree % d == 0


def descent_report(s, d):
    """Full bookkeeping for a degree-d Galois cover of the base of ``s``.

    The twisted degree adds ``d / p_i`` fixed points per cone point, each
    carrying its twist coefficient, to the pulled-back Euler number.
    """
    data = fiber_exponents_from_symbol(s)
    bad = [f.p for f in data if d % f.p]
    if bad:
        raise ValueError(f"degree {d} is not a multiple of the cone orders {bad}; no smooth cover has it")
    twist = compute_twist(data)
    residuals = residual_exponents(data, twist)
    e_up = pullback_euler(s, d)
    twisted = e_up + sum((d // f.p) * c for f, c in zip(data, twist.coefficients))
    ratio, ok = descent_degree_check(twisted, d)
    return DescentReport(tuple(data), twist, tuple(residuals), e_up, d, twisted, ratio, ok)
