"""Seifert invariants, base orbifolds and the geometry table.

Everything here is exact: rationals are :class:`fractions.Fraction` and the
geometry of a Seifert manifold is decided from the sign of the orbifold
Euler characteristic and from whether the Euler number vanishes.

Conventions::

    chi = chi(underlying surface) - sum(1 - 1/p_i)
    e   = -(b + sum(q_i / p_i))

The text form of a symbol is ``{b=-1; g=0; (2,1)(3,1)(5,1)}``; append ``n``
to the genus (``g=2n``) for a nonorientable base, whose genus is then the
number of crosscaps.  ``-`` stands for "no exceptional fibers".
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .errors import NonCoprimePair, NonPositiveOrder, ParseError

Rational = Fraction


class Geometry(Enum):
    S3 = "S3"
    S2xR = "S2xR"
    E3 = "E3"
    NIL = "Nil"
    H2xR = "H2xR"
    SL2R = "SL2R-tilde"


class BadKind(Enum):
    TEARDROP = "Teardrop"
    SPINDLE = "Spindle"


# (chi sign, e == 0) -> geometry
_TABLE = {
    (1, True): Geometry.S2xR,
    (0, True): Geometry.E3,
    (-1, True): Geometry.H2xR,
    (1, False): Geometry.S3,
    (0, False): Geometry.NIL,
    (-1, False): Geometry.SL2R,
}


def _check_surface(genus, orientable):
    if not isinstance(genus, int) or genus < 0:
        raise ValueError(f"genus must be a nonnegative integer, got {genus!r}")
    if not orientable and genus == 0:
        raise ValueError("a nonorientable surface needs at least one crosscap")


@dataclass(frozen=True)
class RawSymbol:
    """Unvalidated Seifert data as typed by a user; feed it to :func:`normalize`."""

    b: int
    base_genus: int
    base_orientable: bool = True
    exceptional: tuple = ()


@dataclass(frozen=True)
class SeifertSymbol:
    b: int
    base_genus: int
    base_orientable: bool = True
    exceptional: tuple = ()

    def __post_init__(self):
        _check_surface(self.base_genus, self.base_orientable)
        pairs = tuple((int(p), int(q)) for p, q in self.exceptional)
        object.__setattr__(self, "exceptional", pairs)
        for p, q in pairs:
            if p < 1:
                raise NonPositiveOrder(f"fiber order must be positive, got ({p},{q})")
            if not 0 <= q < p:
                raise ValueError(f"fiber ({p},{q}) is not normalized: need 0 <= q < p")
            if gcd(p, q) != 1:
                raise NonCoprimePair(f"fiber ({p},{q}) is not coprime")

    def __str__(self):
        return format_symbol(self)


@dataclass(frozen=True)
class Orbifold2D:
    """Closed 2-orbifold whose only singularities are cone points."""

    genus: int
    orientable: bool = True
    cone_orders: tuple = ()

    def __post_init__(self):
        _check_surface(self.genus, self.orientable)
        cones = tuple(int(p) for p in self.cone_orders)
        if any(p < 2 for p in cones):
            raise ValueError(f"cone orders must be at least 2, got {cones}")
        object.__setattr__(self, "cone_orders", cones)

    def __str__(self):
        return format_orbifold(self)

    def describe(self):
        """Conventional name such as ``S2(2,3,7)`` or ``T2(2)``."""
        if self.orientable:
            surface = {0: "S2", 1: "T2"}.get(self.genus, f"Sigma_{self.genus}")
        else:
            surface = {1: "P2", 2: "K2"}.get(self.genus, f"N_{self.genus}")
        if not self.cone_orders:
            return surface
        return surface + "(" + ",".join(map(str, self.cone_orders)) + ")"


def normalize(raw):
    """Bring every pair into ``0 <= q < p`` and drop trivial fibers.

    Integer carries go into ``b`` so that ``b + sum(q/p)`` is unchanged.
    """
    b = int(raw.b)
    pairs = []
    for p, q in raw.exceptional:
        p, q = int(p), int(q)
        if p < 1:
            raise NonPositiveOrder(f"fiber order must be positive, got ({p},{q})")
        if gcd(p, q) != 1:
            raise NonCoprimePair(f"fiber ({p},{q}) is not coprime")
        carry, r = divmod(q, p)
        b += carry
        if p > 1:
            pairs.append((p, r))
    return SeifertSymbol(b, raw.base_genus, raw.base_orientable, tuple(pairs))


def base_orbifold(s):
    return Orbifold2D(s.base_genus, s.base_orientable, tuple(p for p, _ in s.exceptional if p >= 2))


def underlying_euler_characteristic(o):
    return 2 - 2 * o.genus if o.orientable else 2 - o.genus


def orbifold_euler_characteristic(o):
    chi = Fraction(underlying_euler_characteristic(o))
    for p in o.cone_orders:
        chi -= 1 - Fraction(1, p)
    return chi


def euler_number(s):
    return -(s.b + sum((Fraction(q, p) for p, q in s.exceptional), Fraction(0)))


def _sign(x):
    return (x > 0) - (x < 0)


def classify_geometry(chi, e):
    return _TABLE[_sign(chi), e == 0]


def geometry_of(s):
    return classify_geometry(orbifold_euler_characteristic(base_orbifold(s)), euler_number(s))


def bad_orbifold_kind(o):
    """Return the :class:`BadKind` of a teardrop or spindle, else None."""
    if not o.orientable or o.genus != 0:
        return None
    cones = o.cone_orders
    if len(cones) == 1:
        return BadKind.TEARDROP
    if len(cones) == 2 and cones[0] != cones[1]:
        return BadKind.SPINDLE
    return None


def is_bad_orbifold(o):
    return bad_orbifold_kind(o) is not None


def is_spherical(s):
    chi = orbifold_euler_characteristic(base_orbifold(s))
    return chi > 0 and euler_number(s) != 0


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text):
    return Fraction(text)


def format_symbol(s):
    genus = f"{s.base_genus}{'' if s.base_orientable else 'n'}"
    fibers = "".join(f"({p},{q})" for p, q in s.exceptional) or "-"
    return f"{{b={s.b}; g={genus}; {fibers}}}"


def format_orbifold(o):
    cones = ",".join(map(str, o.cone_orders)) or "-"
    return f"g={o.genus} {'o' if o.orientable else 'n'} cones={cones}"


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, expected):
        self.skip()
        raise ParseError(self.text, self.pos, expected)

    def expect(self, token):
        self.skip()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
        else:
            self.error(repr(token))

    def accept(self, token):
        self.skip()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def integer(self, signed=True):
        self.skip()
        start = self.pos
        if signed and self.peek() in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            self.error("an integer" if signed else "a nonnegative integer")
        return int(self.text[start:self.pos])

    def end(self):
        if self.peek():
            self.error("end of input")


def parse_symbol(text):
    """Parse the symbol grammar into a :class:`RawSymbol` (not yet normalized).

    Commas between fiber pairs are tolerated.
    """
    sc = _Scanner(text)
    sc.expect("{")
    sc.expect("b")
    sc.expect("=")
    b = sc.integer()
    sc.expect(";")
    sc.expect("g")
    sc.expect("=")
    genus = sc.integer(signed=False)
    orientable = not sc.accept("n")
    sc.expect(";")
    pairs = []
    if not sc.accept("-"):
        if sc.peek() != "(":
            sc.error("'(' or '-'")
        while sc.peek() == "(":
            sc.expect("(")
            p = sc.integer(signed=False)
            sc.expect(",")
            q = sc.integer()
            sc.expect(")")
            pairs.append((p, q))
            sc.accept(",")
    sc.expect("}")
    sc.end()
    if not orientable and genus == 0:
        raise ParseError(text, text.index("g"), "a positive crosscap count for a nonorientable base")
    return RawSymbol(b, genus, orientable, tuple(pairs))


def parse_orbifold(text):
    """Parse ``g=0 o cones=2,2,3,3`` (``o``/``n`` for orientability)."""
    sc = _Scanner(text)
    sc.expect("g")
    sc.expect("=")
    genus = sc.integer(signed=False)
    if sc.accept("o"):
        orientable = True
    elif sc.accept("n"):
        orientable = False
    else:
        orientable = True
    cones = []
    if sc.accept("cones"):
        sc.expect("=")
        if not sc.accept("-") and sc.peek():
            cones.append(sc.integer(signed=False))
            while sc.accept(","):
                cones.append(sc.integer(signed=False))
    sc.end()
    try:
        return Orbifold2D(genus, orientable, tuple(cones))
    except ValueError as exc:
        raise ParseError(text, 0, str(exc)) from None
