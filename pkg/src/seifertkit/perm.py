"""Permutations of ``{0, ..., d-1}`` stored as tuples of images.

Products are read left to right: ``compose(p, q)`` applies ``p`` first, so
``compose(p, q)[x] == q[p[x]]``.  Cycle notation in text is 1-based with
fixed points omitted, e.g. ``(1 2)(3 4)``.
"""

import re
from math import lcm

from .errors import GroupTooLarge

DEFAULT_GROUP_CAP = 20160


def identity(n):
    return tuple(range(n))


def is_permutation(p, n=None):
    n = len(p) if n is None else n
    return len(p) == n and sorted(p) == list(range(n))


def compose(p, q):
    return tuple(q[i] for i in p)


def inverse(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def product(perms, n):
    out = identity(n)
    for p in perms:
        out = compose(out, p)
    return out


def cycles(p, include_fixed=False):
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        if len(cyc) > 1 or include_fixed:
            out.append(tuple(cyc))
    return out


def cycle_type(p):
    return sorted(len(c) for c in cycles(p, include_fixed=True))


def from_cycles(cycs, n):
    images = list(range(n))
    for cyc in cycs:
        if any(not 0 <= a < n for a in cyc):
            raise ValueError(f"cycle {cyc} has points outside 0..{n - 1}")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a] = b
    p = tuple(images)
    if not is_permutation(p):
        raise ValueError(f"cycles {cycs} do not define a permutation of {n} points")
    return p


def format_cycles(p):
    """List of 1-based cycle strings, e.g. ``['(1 2)', '(3 4)']``."""
    return ["(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles(p)]


def format_perm(p):
    return "".join(format_cycles(p)) or "()"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_perm(text, n):
    """Parse 1-based cycle notation (a string or a list of cycle strings)."""
    if not isinstance(text, str):
        text = "".join(text)
    stripped = _CYCLE.sub("", text).strip()
    if stripped:
        raise ValueError(f"cannot parse permutation {text!r}")
    cycs = []
    for body in _CYCLE.findall(text):
        items = [int(tok) - 1 for tok in re.split(r"[\s,]+", body.strip()) if tok]
        if items:
            cycs.append(items)
    return from_cycles(cycs, n)


def orbits(gens, n):
    """Orbits of the group generated by ``gens`` on ``range(n)``."""
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in gens:
        for i, j in enumerate(g):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def is_transitive(gens, n):
    return n > 0 and len(orbits(gens, n)) == 1


def group_closure(gens, n, cap=DEFAULT_GROUP_CAP):
    """All elements of the group generated by ``gens``, in breadth-first order.

    The identity comes first.  Raises :class:`GroupTooLarge` beyond ``cap``.
    """
    e = identity(n)
    elements = [e]
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(g, s)
                if h not in seen:
                    seen.add(h)
                    elements.append(h)
                    nxt.append(h)
                    if len(elements) > cap:
                        raise GroupTooLarge(f"group order exceeds cap {cap}")
        frontier = nxt
    return elements


def element_order(p):
    return lcm(*(len(c) for c in cycles(p, include_fixed=True))) if p else 1
