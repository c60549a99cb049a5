"""The solid-torus local model and the maps that desingularize it.

For coprime ``0 <= q < p`` the Seifert fibration of the solid torus is
``f_pq(u, z) = u**q * z**p``.  Pulling it back along ``g(w) = w**p`` gives
the singular set ``F = {u**q z**p = w**p}``; its smooth model is
``Ftilde = {u**q = x**p}`` with ``delta(u, z, x) = (u, z, x z)``.  The circle
acts on Ftilde by ``v.(u, z, x) = (v**p u, v**-q z, v**q x)``, freely and
transitively on the fibers of ``ftilde(u, z, x) = x z``, and the roots of
unity act by ``xi.(u, z, x) = (u, z, xi x)``.

Every function works on two number models:

* Python ``complex`` values, checked against fixed tolerances;
* :class:`~seifertkit.cyclotomic.Cyclotomic` values, where circle points are
  roots of unity of order dividing N and the identities hold exactly.
"""

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomic import Cyclotomic
from .errors import MembershipViolation, NotCoprime, NotRootOfUnity

EPS_UNIT = 1e-12
EPS_MEM = 1e-12
EPS_ROUND = 1e-10
EXACT_ORDER = 840


def bezout(p, q):
    """Integers ``(a, b)`` with ``a*p + b*q == 1`` and ``|b|`` minimal.

    ``b`` is the representative of ``q**-1 mod p`` in ``(-p/2, p/2]``.
    """
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    if p == 1:
        return 1, 0
    b = pow(q, -1, p)
    if 2 * b > p:
        b -= p
    a, rem = divmod(1 - b * q, p)
    assert rem == 0
    return a, b


@dataclass(frozen=True)
class ModelParams:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"p must be positive, got {self.p}")
        if not 0 <= self.q < self.p:
            raise ValueError(f"need 0 <= q < p, got q={self.q}, p={self.p}")
        if gcd(self.p, self.q) != 1:
            raise NotCoprime(f"gcd({self.p}, {self.q}) != 1")

    @property
    def bezout(self):
        return bezout(self.p, self.q)


@dataclass(frozen=True)
class FTildePoint:
    u: object
    z: object
    x: object


@dataclass(frozen=True)
class FPoint:
    u: object
    z: object
    w: object


def _is_exact(value):
    return isinstance(value, Cyclotomic)


def _one_like(value):
    return Cyclotomic.scalar(1, value.order) if _is_exact(value) else 1 + 0j


def _i_like(value):
    return Cyclotomic.root(value.order // 4, value.order) if _is_exact(value) else 1j


def defect(a, b):
    """``|a - b|``; exactly 0.0 when exact values are equal in the field."""
    if _is_exact(a) or _is_exact(b):
        diff = a - b
        return 0.0 if diff.is_zero() else abs(complex(diff))
    return abs(a - b)


def is_unit(value, eps=EPS_UNIT):
    if _is_exact(value):
        return value * value.conjugate() == 1
    return abs(abs(value) - 1) <= eps


def is_disc(value, eps=EPS_UNIT):
    return abs(complex(value)) <= 1 + eps


def ftilde_residual(m, t):
    return defect(t.u ** m.q, t.x ** m.p)


def f_residual(m, pt):
    return defect(pt.u ** m.q * pt.z ** m.p, pt.w ** m.p)


def make_ftilde_point(m, u, z, x, eps=EPS_MEM):
    """Build a validated point of Ftilde."""
    if not (is_unit(u) and is_unit(x)):
        raise MembershipViolation("u and x must lie on the unit circle")
    if not is_disc(z):
        raise MembershipViolation("z must lie in the closed unit disc")
    t = FTildePoint(u, z, x)
    if ftilde_residual(m, t) > eps:
        raise MembershipViolation(f"u**q != x**p (residual {ftilde_residual(m, t):.3g})")
    return t


def _require_ftilde(m, t, what):
    r = ftilde_residual(m, t)
    if r > EPS_MEM:
        raise MembershipViolation(f"{what} left Ftilde (residual {r:.3g})")
    return t


def f_pq(m, u, z):
    return u ** m.q * z ** m.p


def branched_cover_g(p, w):
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    return w ** p


def delta(m, t):
    pt = FPoint(t.u, t.z, t.x * t.z)
    r = f_residual(m, pt)
    if r > EPS_MEM:
        raise MembershipViolation(f"delta image left F (residual {r:.3g})")
    return pt


def f_tilde(m, t):
    return t.x * t.z


def f_map(pt):
    """Projection ``F -> D2``, ``(u, z, w) -> w``."""
    return pt.w


def g_prime(pt):
    """Projection ``F -> S1 x D2``, ``(u, z, w) -> (u, z)``."""
    return pt.u, pt.z


def circle_action(m, v, t):
    out = FTildePoint(v ** m.p * t.u, v ** (-m.q) * t.z, v ** m.q * t.x)
    return _require_ftilde(m, out, "circle action")


def section_s(m, z):
    one = _one_like(z)
    return FTildePoint(one, z, one)


def trivialize(m, t):
    """Split a point of Ftilde into its circle coordinate and its base point.

    Returns ``(v, w)`` with ``circle_action(m, v, section_s(m, w)) == t``.
    """
    a, b = m.bezout
    return t.u ** a * t.x ** b, t.x * t.z


def untrivialize(m, v, w):
    return circle_action(m, v, section_s(m, w))


def mu_p_action(m, xi, t):
    if defect(xi ** m.p, 1) > EPS_UNIT:
        raise NotRootOfUnity(f"{xi!r} is not a {m.p}-th root of unity")
    out = FTildePoint(t.u, t.z, xi * t.x)
    return _require_ftilde(m, out, "mu_p action")


def check_quotient_diagram(m, t):
    """Defect of ``f_pq(u, z) == ftilde(t)**p`` at a point of Ftilde."""
    return defect(f_pq(m, t.u, t.z), branched_cover_g(m.p, f_tilde(m, t)))


def gradient_norm_squared(m, u, z, w):
    """Squared operator norm of the derivative of ``u**q z**p - w**p``.

    The derivative maps R x C x C (angle of u, z, w) to C.  The z- and
    w-blocks are complex-linear, so the largest singular value squared is
    ``|dh/dtheta|**2 + |dh/dz|**2 + |dh/dw|**2``.  Exact inputs give an exact
    (real) cyclotomic result.
    """
    p, q = m.p, m.q
    h_z = p * u ** q * z ** (p - 1)
    h_w = -p * w ** (p - 1)
    h_theta = _i_like(z) * q * u ** q * z ** p
    total = h_z * h_z.conjugate() + h_w * h_w.conjugate() + h_theta * h_theta.conjugate()
    return total if _is_exact(total) else total.real


def gradient_of_F_equation(m, pt):
    """Norm of the derivative of the defining equation of F at ``pt = (u, z, w)``."""
    u, z, w = pt
    return math.sqrt(abs(complex(gradient_norm_squared(m, u, z, w))))


def primitive_root(p, k=1):
    return cmath.exp(2j * math.pi * k / p)


def exact_root(p, k=1, order=EXACT_ORDER):
    if order % p:
        raise ValueError(f"{p}-th roots of unity need p | N, N={order}")
    return Cyclotomic.root(k * (order // p), order)


# ---------------------------------------------------------------- sampling

def random_unit(rng):
    return cmath.exp(2j * math.pi * rng.random())


def random_disc(rng):
    return math.sqrt(rng.random()) * random_unit(rng)


def random_ftilde_point(m, rng):
    """Uniform angle for u, a random p-th root branch for x, uniform z."""
    theta = 2 * math.pi * rng.random()
    k = rng.randrange(m.p)
    u = cmath.exp(1j * theta)
    x = cmath.exp(1j * (m.q * theta + 2 * math.pi * k) / m.p)
    return FTildePoint(u, random_disc(rng), x)


def random_exact_unit(rng, order=EXACT_ORDER):
    return Cyclotomic.root(rng.randrange(order), order)


def random_exact_disc(rng, order=EXACT_ORDER, den=64):
    while True:
        a, b = rng.randint(-den, den), rng.randint(-den, den)
        if a * a + b * b <= den * den:
            return Cyclotomic.gaussian(Fraction(a, den), Fraction(b, den), order)


def random_exact_ftilde_point(m, rng, order=EXACT_ORDER):
    """``u = zeta**(p s)``, ``x = zeta**(q s) * xi**k``: then ``u**q == x**p``."""
    if order % m.p:
        raise ValueError(f"exact sampling needs p | N (p={m.p}, N={order})")
    s = rng.randrange(order)
    k = rng.randrange(m.p)
    u = Cyclotomic.root(m.p * s, order)
    x = Cyclotomic.root(m.q * s + k * (order // m.p), order)
    return FTildePoint(u, random_exact_disc(rng, order), x)


# ---------------------------------------------------------------- battery

BATTERY_KEYS = (
    "membership_delta",
    "membership_circle",
    "membership_mu",
    "square_B",
    "quotient_identity",
    "quotient_mu_invariance",
    "equivariance",
    "group_law",
    "roundtrip_forward",
    "roundtrip_backward",
)


def run_battery(m, samples, seed=0, exact=False, order=EXACT_ORDER):
    """Run every local-model identity on seeded random points.

    Returns the maximum residual observed for each identity.
    """
    rng = random.Random(seed)
    worst = dict.fromkeys(BATTERY_KEYS, 0.0)

    if exact:
        point = lambda: random_exact_ftilde_point(m, rng, order)
        unit = lambda: random_exact_unit(rng, order)
        disc = lambda: random_exact_disc(rng, order)
        root = lambda: exact_root(m.p, rng.randrange(m.p), order)
    else:
        point = lambda: random_ftilde_point(m, rng)
        unit = lambda: random_unit(rng)
        disc = lambda: random_disc(rng)
        root = lambda: primitive_root(m.p, rng.randrange(m.p))

    def note(key, value):
        if value > worst[key]:
            worst[key] = value

    for _ in range(samples):
        t = point()
        d = delta(m, t)
        note("membership_delta", f_residual(m, d))
        note("square_B", defect(f_map(d), f_tilde(m, t)))
        q0 = check_quotient_diagram(m, t)
        note("quotient_identity", q0)

        v1, v2 = unit(), unit()
        moved = circle_action(m, v1, t)
        note("membership_circle", ftilde_residual(m, moved))
        note("equivariance", defect(f_tilde(m, moved), f_tilde(m, t)))
        once = circle_action(m, v1 * v2, t)
        twice = circle_action(m, v1, circle_action(m, v2, t))
        note("group_law", max(defect(once.u, twice.u), defect(once.z, twice.z), defect(once.x, twice.x)))

        xi = root()
        tm = mu_p_action(m, xi, t)
        note("membership_mu", ftilde_residual(m, tm))
        note("quotient_mu_invariance", abs(check_quotient_diagram(m, tm) - q0))

        v, w = trivialize(m, t)
        back = untrivialize(m, v, w)
        note("roundtrip_forward", max(defect(back.u, t.u), defect(back.z, t.z), defect(back.x, t.x)))

        v0, w0 = unit(), disc()
        v1b, w1b = trivialize(m, untrivialize(m, v0, w0))
        note("roundtrip_backward", max(defect(v1b, v0), defect(w1b, w0)))
    return worst


def coprime_pairs(max_p):
    """All model parameters with ``p <= max_p``."""
    return [ModelParams(p, q) for p in range(1, max_p + 1) for q in range(p) if gcd(p, q) == 1]
