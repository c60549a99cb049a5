"""Finite smooth covers of 2-orbifolds, found as permutation representations.

A degree-d cover of an orbifold with cone orders ``p_1 .. p_n`` is encoded by
permutations of ``d`` points, one per generator of the orbifold group:

* orientable base of genus g: ``a_1, b_1, ..., a_g, b_g, c_1, ..., c_n`` with
  ``[a_1,b_1] ... [a_g,b_g] c_1 ... c_n = 1``;
* nonorientable base with k crosscaps: ``x_1, ..., x_k, c_1, ..., c_n`` with
  ``x_1**2 ... x_k**2 c_1 ... c_n = 1``.

The cover is connected iff the permutations generate a transitive group, and
it is smooth iff every cycle of ``c_i`` has length exactly ``p_i``: every
preimage of the i-th cone point then has local degree ``p_i``.  Products are
read left to right, ``[a, b] = a b a**-1 b**-1``.

The search enumerates transitive representations of a fixed degree as coset
tables in canonical form (points are numbered in order of first definition
from point 0), so each conjugacy class is visited at most ``d`` times instead
of ``d!`` times.  Relators are scanned after every definition to deduce
forced entries and to reject dead branches early.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import perm as P
from .errors import AlreadyOrientable, BadOrbifold, CoverNotFound, NotRegular
from .symbol import Orbifold2D, bad_orbifold_kind, orbifold_euler_characteristic

DEFAULT_MAX_MULT = 12
DEFAULT_NODE_LIMIT = 200_000


@dataclass(frozen=True)
class CoverCertificate:
    degree: int
    cone_perms: tuple = ()
    handle_perms: tuple = ()
    crosscap_perms: tuple = ()
    cover_genus: int = 0
    cover_orientable: bool = True

    def generators(self):
        gens = [g for pair in self.handle_perms for g in pair]
        return gens + list(self.crosscap_perms) + list(self.cone_perms)

    def to_dict(self):
        fmt = P.format_cycles
        return {
            "degree": self.degree,
            "cone_perms": [fmt(p) for p in self.cone_perms],
            "handle_perms": [[fmt(a), fmt(b)] for a, b in self.handle_perms],
            "crosscap_perms": [fmt(p) for p in self.crosscap_perms],
            "cover_genus": self.cover_genus,
            "cover_orientable": self.cover_orientable,
        }

    @classmethod
    def from_dict(cls, data):
        d = data["degree"]
        parse = lambda cyc: P.parse_perm(cyc, d)
        return cls(
            degree=d,
            cone_perms=tuple(parse(p) for p in data.get("cone_perms", [])),
            handle_perms=tuple((parse(a), parse(b)) for a, b in data.get("handle_perms", [])),
            crosscap_perms=tuple(parse(p) for p in data.get("crosscap_perms", [])),
            cover_genus=data["cover_genus"],
            cover_orientable=data["cover_orientable"],
        )


@dataclass
class Verification:
    ok: bool
    reason: str = "ok"

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------- verifier

def _orientation_coloring(crosscaps, others, n):
    """Two-colour the points so crosscaps swap colours and the rest keep them.

    Returns None when no such colouring exists (the cover is nonorientable).
    """
    moves = [(g, 1) for g in crosscaps] + [(g, 0) for g in others]
    moves += [(P.inverse(g), flip) for g, flip in moves]
    color = [None] * n
    for start in range(n):
        if color[start] is not None:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            for g, flip in moves:
                y, want = g[x], color[x] ^ flip
                if color[y] is None:
                    color[y] = want
                    stack.append(y)
                elif color[y] != want:
                    return None
    return color


def cover_euler_characteristic(o, degree):
    return degree * orbifold_euler_characteristic(o)


def verify_certificate(o, c):
    """Check a certificate from scratch; the reason names the first failure."""
    d = c.degree
    if not isinstance(d, int) or d < 1:
        return Verification(False, f"degree must be a positive integer, got {d!r}")
    if len(c.cone_perms) != len(o.cone_orders):
        return Verification(False, f"expected {len(o.cone_orders)} cone permutations, got {len(c.cone_perms)}")
    if o.orientable:
        if c.crosscap_perms or len(c.handle_perms) != o.genus:
            return Verification(False, f"orientable base of genus {o.genus} needs {o.genus} handle pairs and no crosscaps")
    elif c.handle_perms or len(c.crosscap_perms) != o.genus:
        return Verification(False, f"nonorientable base needs {o.genus} crosscap permutations and no handles")
    gens = c.generators()
    for g in gens:
        if not P.is_permutation(g, d):
            return Verification(False, f"{g!r} is not a permutation of {d} points")

    for i, (g, p) in enumerate(zip(c.cone_perms, o.cone_orders)):
        lengths = set(P.cycle_type(g))
        if lengths != {p}:
            return Verification(False, f"cycle type: cone permutation {i} has cycle lengths {sorted(lengths)}, need all {p}")

    word = []
    for a, b in c.handle_perms:
        word += [a, b, P.inverse(a), P.inverse(b)]
    for x in c.crosscap_perms:
        word += [x, x]
    word += list(c.cone_perms)
    if P.product(word, d) != P.identity(d):
        return Verification(False, "relation: the product of the generators is not the identity")

    if not P.is_transitive(gens, d):
        return Verification(False, "transitivity: the generated group is not transitive")

    if o.orientable:
        orientable = True
    else:
        orientable = _orientation_coloring(c.crosscap_perms, c.cone_perms, d) is not None
    if orientable != c.cover_orientable:
        return Verification(False, f"orientability: cover is {'orientable' if orientable else 'nonorientable'}, certificate says otherwise")

    chi = cover_euler_characteristic(o, d)
    expected = 2 - 2 * c.cover_genus if c.cover_orientable else 2 - c.cover_genus
    if chi != expected:
        return Verification(False, f"Riemann-Hurwitz: degree * chi_orb = {chi}, but the stated surface has chi = {expected}")
    return Verification(True)


# ---------------------------------------------------------------- presentation

@dataclass
class _Presentation:
    ngens: int
    relators: list
    cone_order: dict = field(default_factory=dict)  # generator index -> p
    flip: list = field(default_factory=list)  # per letter, orientation character
    handles: int = 0
    crosscaps: int = 0
    cones: int = 0


def _presentation(o):
    ngens = 0
    main = []
    flip_gens = []
    if o.orientable:
        for _ in range(o.genus):
            a, b = ngens, ngens + 1
            ngens += 2
            main += [2 * a, 2 * b, 2 * a + 1, 2 * b + 1]
            flip_gens += [0, 0]
    else:
        for _ in range(o.genus):
            x = ngens
            ngens += 1
            main += [2 * x, 2 * x]
            flip_gens.append(1)
    cone_order = {}
    relators = []
    for p in o.cone_orders:
        c = ngens
        ngens += 1
        main.append(2 * c)
        cone_order[c] = p
        relators.append([2 * c] * p)
        flip_gens.append(0)
    if main:
        relators.append(main)
    flip = [f for f in flip_gens for _ in (0, 1)]
    return _Presentation(
        ngens, relators, cone_order, flip,
        handles=o.genus if o.orientable else 0,
        crosscaps=0 if o.orientable else o.genus,
        cones=len(o.cone_orders),
    )


def _rotations_by_letter(relators, nletters):
    """All cyclic rotations of relators and their inverses, keyed by first letter."""
    words = set()
    for r in relators:
        inv = [l ^ 1 for l in reversed(r)]
        for w in (r, inv):
            for i in range(len(w)):
                words.add(tuple(w[i:] + w[:i]))
    by_letter = [[] for _ in range(nletters)]
    for w in sorted(words):
        by_letter[w[0]].append(w)
    return by_letter


class _BudgetExceeded(Exception):
    pass


class _Dead(Exception):
    pass


class _State:
    __slots__ = ("table", "n", "color")

    def __init__(self, table, n, color):
        self.table = table
        self.n = n
        self.color = color

    def copy(self):
        return _State(self.table[:], self.n, self.color[:])


class _TableSearch:
    """Depth-first enumeration of canonical coset tables of one degree."""

    def __init__(self, pres, degree, seed=0, node_limit=None, require_orientable=False):
        self.pres = pres
        self.d = degree
        self.W = 2 * pres.ngens
        self.rels = _rotations_by_letter(pres.relators, self.W)
        self.track_color = require_orientable and any(pres.flip)
        self.letter_order = list(range(self.W))
        if seed:
            random.Random(seed).shuffle(self.letter_order)
        self.node_limit = node_limit
        self.nodes = 0

    # -- table primitives -------------------------------------------------

    def _assign(self, st, x, l, y, queue):
        W = self.W
        T = st.table
        il = l ^ 1
        if T[x * W + l] != -1 or T[y * W + il] != -1:
            raise _Dead
        if self.track_color and st.color[y] != st.color[x] ^ self.pres.flip[l]:
            raise _Dead
        T[x * W + l] = y
        T[y * W + il] = x
        queue.append((x, l))
        p = self.pres.cone_order.get(l >> 1)
        if p is not None:
            g = (l >> 1) * 2
            start = x if l == g else y
            cur = T[start * W + g]
            steps = 1
            while cur != start and cur != -1:
                if steps >= p:
                    raise _Dead
                cur = T[cur * W + g]
                steps += 1
            if cur == start and steps != p:
                raise _Dead

    def _scan(self, st, x, word, queue):
        T, W = st.table, self.W
        f, i, k = x, 0, len(word)
        while i < k:
            nf = T[f * W + word[i]]
            if nf == -1:
                break
            f = nf
            i += 1
        if i == k:
            if f != x:
                raise _Dead
            return
        b, j = x, k - 1
        while j >= i:
            nb = T[b * W + (word[j] ^ 1)]
            if nb == -1:
                break
            b = nb
            j -= 1
        if j < i:
            if f != b:
                raise _Dead
        elif j == i:
            self._assign(st, f, word[i], b, queue)

    def _define(self, st, x, l, y):
        queue = []
        if y == st.n:
            st.n += 1
            if self.track_color:
                st.color[y] = st.color[x] ^ self.pres.flip[l]
        self._assign(st, x, l, y, queue)
        T, W = st.table, self.W
        while queue:
            a, l2 = queue.pop()
            for w in self.rels[l2]:
                self._scan(st, a, w, queue)
            b = T[a * W + l2]
            for w in self.rels[l2 ^ 1]:
                self._scan(st, b, w, queue)

    def _next_gap(self, st):
        T, W = st.table, self.W
        for x in range(st.n):
            base = x * W
            for l in self.letter_order:
                if T[base + l] == -1:
                    return x, l
        return None

    def _candidates(self, st, x, l):
        T, W = st.table, self.W
        il = l ^ 1
        out = [y for y in range(st.n) if T[y * W + il] == -1]
        if st.n < self.d:
            out.append(st.n)
        return out

    # -- driver -----------------------------------------------------------

    def first(self):
        """First complete table of exactly ``d`` points, or None."""
        d, W = self.d, self.W
        root = _State([-1] * (d * W), 1, [0] + [None] * (d - 1))
        if W == 0:
            return root if d == 1 else None
        gap = self._next_gap(root)
        stack = [(root, gap, iter(self._candidates(root, *gap)))]
        while stack:
            st, (x, l), cands = stack[-1]
            y = next(cands, None)
            if y is None:
                stack.pop()
                continue
            self.nodes += 1
            if self.node_limit is not None and self.nodes > self.node_limit:
                raise _BudgetExceeded
            child = st.copy()
            try:
                self._define(child, x, l, y)
            except _Dead:
                continue
            gap = self._next_gap(child)
            if gap is None:
                if child.n == d:
                    return child
                continue
            stack.append((child, gap, iter(self._candidates(child, *gap))))
        return None

    def certificate(self, st, o):
        d, W = self.d, self.W
        perm_of = lambda g: tuple(st.table[x * W + 2 * g] for x in range(d))
        pres = self.pres
        gens = [perm_of(g) for g in range(pres.ngens)]
        h = 2 * pres.handles
        handles = tuple((gens[i], gens[i + 1]) for i in range(0, h, 2))
        crosscaps = tuple(gens[h:h + pres.crosscaps])
        cones = tuple(gens[h + pres.crosscaps:])
        chi = cover_euler_characteristic(o, d)
        if o.orientable:
            orientable = True
        else:
            orientable = _orientation_coloring(crosscaps, cones, d) is not None
        genus = (2 - chi) / 2 if orientable else 2 - chi
        return CoverCertificate(d, cones, handles, crosscaps, int(genus), orientable)


# ---------------------------------------------------------------- search

def cone_lcm(o):
    return lcm(*o.cone_orders) if o.cone_orders else 1


def candidate_degrees(o, max_degree_multiplier=DEFAULT_MAX_MULT):
    """Multiples of lcm(cone orders) for which an orientable cover can exist.

    Skips degrees where ``d * chi_orb`` is not an even integer, or exceeds 2
    (a connected closed surface has Euler characteristic at most 2).  An
    orientable cover of a nonorientable base factors through the orientation
    double cover, so its degree is even.
    """
    L = cone_lcm(o)
    chi = orbifold_euler_characteristic(o)
    out = []
    for k in range(1, max_degree_multiplier + 1):
        d = k * L
        c = d * chi
        if c.denominator != 1 or c.numerator % 2 or c > 2:
            continue
        if not o.orientable and d % 2:
            continue
        out.append(d)
    return out


def search_cover(o, max_degree_multiplier=DEFAULT_MAX_MULT, seed=0, node_limit=DEFAULT_NODE_LIMIT):
    """Search for an orientable smooth cover without screening bad orbifolds.

    Returns the first certificate at the smallest feasible degree, or raises
    :class:`CoverNotFound`.  ``node_limit`` bounds the work per degree; a
    degree abandoned that way is listed in the exception.
    """
    pres = _presentation(o)
    truncated = []
    for d in candidate_degrees(o, max_degree_multiplier):
        search = _TableSearch(pres, d, seed=seed, node_limit=node_limit, require_orientable=True)
        try:
            st = search.first()
        except _BudgetExceeded:
            truncated.append(d)
            continue
        if st is not None:
            return search.certificate(st, o)
    raise CoverNotFound(o, cone_lcm(o) * max_degree_multiplier, not truncated, truncated)


def smooth_cover_search(o, max_degree_multiplier=DEFAULT_MAX_MULT, seed=0, node_limit=DEFAULT_NODE_LIMIT):
    """Smallest-degree smooth orientable cover of a good orbifold.

    Teardrops and spindles are rejected up front: for a teardrop the
    relation forces the single cone generator to be the identity, which has
    fixed points; for a spindle it forces the two cone generators to be
    mutually inverse, so they would share a cycle type.
    """
    kind = bad_orbifold_kind(o)
    if kind is not None:
        raise BadOrbifold(kind, o)
    return search_cover(o, max_degree_multiplier, seed, node_limit)


def orientation_double_cover(o):
    if o.orientable:
        raise AlreadyOrientable(f"{o} is already orientable")
    cones = tuple(p for p in o.cone_orders for _ in (0, 1))
    cover = Orbifold2D(o.genus - 1, True, cones)
    assert orbifold_euler_characteristic(cover) == 2 * orbifold_euler_characteristic(o)
    return cover


# ---------------------------------------------------------------- Galois closure

def generated_group_order(c, cap=P.DEFAULT_GROUP_CAP):
    return len(P.group_closure(c.generators(), c.degree, cap))


def galois_closure(c, cap=P.DEFAULT_GROUP_CAP):
    """Regular certificate of the group G generated by the certificate.

    Each generator s is replaced by right multiplication ``g -> g s`` on the
    elements of G (listed breadth-first from the identity), which is a
    homomorphism for left-to-right products, so every relation survives.
    An element of order p acts there with all cycles of length p.
    """
    elements = P.group_closure(c.generators(), c.degree, cap)
    index = {g: i for i, g in enumerate(elements)}
    regular = lambda s: tuple(index[P.compose(g, s)] for g in elements)
    order = len(elements)
    cones = tuple(regular(s) for s in c.cone_perms)
    handles = tuple((regular(a), regular(b)) for a, b in c.handle_perms)
    crosscaps = tuple(regular(s) for s in c.crosscap_perms)
    chi_cover = 2 - 2 * c.cover_genus if c.cover_orientable else 2 - c.cover_genus
    chi = Fraction(chi_cover, c.degree) * order
    if crosscaps:
        orientable = _orientation_coloring(crosscaps, cones, order) is not None
    else:
        orientable = True
    genus = (2 - chi) / 2 if orientable else 2 - chi
    return CoverCertificate(order, cones, handles, crosscaps, int(genus), orientable)


def deck_group_order(c, cap=P.DEFAULT_GROUP_CAP):
    order = generated_group_order(c, cap)
    if order != c.degree:
        raise NotRegular(f"generated group has order {order}, certificate degree is {c.degree}")
    return order
