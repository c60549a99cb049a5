"""Acceptance criteria, one test per criterion.

Each test checks its criterion at the stated tolerance and within its
runtime budget.  ``conftest.py`` prints one PASS/FAIL line per criterion at
the end of the session.
"""

import random
import time
from fractions import Fraction
from math import gcd

import pytest

from seifertkit import cover as cv
from seifertkit import descent as ds
from seifertkit import local_model as lm
from seifertkit.cyclotomic import Cyclotomic
from seifertkit.errors import BadOrbifold, CoverNotFound
from seifertkit.pipeline import Status, run_pipeline
from seifertkit.symbol import (
    Geometry,
    Orbifold2D,
    SeifertSymbol,
    base_orbifold,
    classify_geometry,
    euler_number,
    is_bad_orbifold,
    normalize,
    orbifold_euler_characteristic,
    parse_symbol,
)

F = Fraction


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.2f}s, budget {self.seconds}s"


def test_criterion_1_geometry_table():
    expected = [
        ("{b=0;g=0;-}", F(2), F(0), Geometry.S2xR),
        ("{b=0;g=1;-}", F(0), F(0), Geometry.E3),
        ("{b=0;g=2;-}", F(-2), F(0), Geometry.H2xR),
        ("{b=-1;g=0;(2,1)(3,1)(5,1)}", F(1, 30), F(-1, 30), Geometry.S3),
        ("{b=1;g=1;-}", F(0), F(-1), Geometry.NIL),
        ("{b=-1;g=0;(2,1)(3,1)(7,1)}", F(-1, 42), F(1, 42), Geometry.SL2R),
    ]
    with Budget(1.0):
        seen = set()
        for text, chi, e, geometry in expected:
            s = normalize(parse_symbol(text))
            got_chi = orbifold_euler_characteristic(base_orbifold(s))
            got_e = euler_number(s)
            assert isinstance(got_chi, Fraction) and isinstance(got_e, Fraction)
            assert (got_chi, got_e) == (chi, e), text
            assert classify_geometry(got_chi, got_e) is geometry, text
            seen.add(geometry)
        assert seen == set(Geometry)


def test_criterion_2_local_model_battery():
    pairs = lm.coprime_pairs(7)
    with Budget(30.0):
        for m in pairs:
            worst = lm.run_battery(m, 10_000, seed=m.p * 100 + m.q)
            bad = {k: v for k, v in worst.items() if not v <= lm.EPS_ROUND}
            assert not bad, f"(p,q)=({m.p},{m.q}) float residuals {bad}"
        for m in pairs:
            assert lm.EXACT_ORDER % m.p == 0
            worst = lm.run_battery(m, 200, seed=m.p * 100 + m.q, exact=True)
            bad = {k: v for k, v in worst.items() if v != 0}
            assert not bad, f"(p,q)=({m.p},{m.q}) exact residuals {bad}"


def test_criterion_3_singularity_dichotomy():
    N = lm.EXACT_ORDER
    zero = Cyclotomic.scalar(0, N)
    with Budget(1.0):
        for m in lm.coprime_pairs(7):
            for k in range(12):
                u = Cyclotomic.root(k * N // 12, N)
                vanishes = lm.gradient_norm_squared(m, u, zero, zero).is_zero()
                assert vanishes == (m.p >= 2), (m, k)
                numeric = lm.gradient_of_F_equation(m, (complex(u), 0j, 0j))
                assert (numeric == 0) == (m.p >= 2)


def test_criterion_4_cover_search():
    oracle = [
        (Orbifold2D(0, True, (2, 2)), 2, 0),
        (Orbifold2D(0, True, (2, 2, 2, 2)), 2, 1),
        (Orbifold2D(0, True, (3, 3, 3)), 3, 1),
        (Orbifold2D(0, True, (2, 2, 3, 3)), 6, 2),
        (Orbifold2D(1, True, (2,)), 4, 2),
    ]
    with Budget(60.0):
        for o, degree, genus in oracle:
            c = cv.smooth_cover_search(o)
            assert (c.degree, c.cover_genus) == (degree, genus), o.describe()
            assert cv.verify_certificate(o, c), o.describe()
            closure = cv.galois_closure(c)
            assert cv.verify_certificate(o, closure), o.describe()
            assert cv.deck_group_order(closure) == closure.degree
            if o == Orbifold2D(1, True, (2,)):
                assert cv.deck_group_order(closure) == 12
        for o in (Orbifold2D(0, True, (3,)), Orbifold2D(0, True, (2, 3))):
            assert is_bad_orbifold(o)
            with pytest.raises(BadOrbifold):
                cv.smooth_cover_search(o)
            with pytest.raises(CoverNotFound) as info:
                cv.search_cover(o, cv.DEFAULT_MAX_MULT)
            assert info.value.exhausted, "exhaustive search was truncated"


def test_criterion_5_descent_arithmetic():
    rng = random.Random(5)
    with Budget(10.0):
        for m in lm.coprime_pairs(9):
            if m.p < 2:
                continue
            (datum,) = ds.fiber_exponents_from_symbol(SeifertSymbol(0, 0, True, ((m.p, m.q),)))
            assert ds.numeric_exponent_oracle(m) == datum.q_exp, (m.p, m.q)

        for _ in range(1000):
            data = []
            for _ in range(rng.randint(0, 8)):
                p = rng.randint(2, 40)
                data.append(ds.FiberRepDatum(p, rng.randrange(p)))
            assert ds.residual_exponents(data, ds.compute_twist(data)) == [0] * len(data)

        bases = [Orbifold2D(0, True, (2, 2)), Orbifold2D(0, True, (2, 2, 2, 2)), Orbifold2D(0, True, (3, 3, 3)),
                 Orbifold2D(0, True, (2, 2, 3, 3)), Orbifold2D(1, True, (2,))]
        for o in bases:
            c = cv.smooth_cover_search(o)
            for cert in (c, cv.galois_closure(c)):
                for _ in range(100):
                    fibers = tuple((p, rng.choice([q for q in range(1, p) if gcd(p, q) == 1]))
                                   for p in o.cone_orders)
                    s = SeifertSymbol(rng.randint(-100, 100), o.genus, o.orientable, fibers)
                    assert isinstance(ds.pullback_euler(s, cert.degree), int)


def test_criterion_6_pipeline():
    with Budget(60.0):
        r = run_pipeline("{b=1; g=0; (2,1)(2,1)(3,1)(3,1)}")
        assert r.status is Status.COMPLETED and r.exit_code == 0
        assert r.geometry is Geometry.SL2R
        assert cv.verify_certificate(r.base, r.cover)
        assert cv.deck_group_order(r.cover) == r.cover.degree
        assert isinstance(r.pullback_euler, int)
        assert all(x == 0 for x in r.descent.residuals)

        r = run_pipeline("{b=-1; g=0; (2,1)(3,1)(5,1)}")
        assert r.status is Status.REFUSED_SPHERICAL and r.exit_code == 2


def test_criterion_7_bad_orbifold_forcing():
    rng = random.Random(7)
    with Budget(1.0):
        for _ in range(1000):
            if rng.random() < 0.5:
                cones = [rng.randint(2, 60)]
            else:
                p1 = rng.randint(2, 60)
                cones = [p1, rng.choice([p for p in range(2, 61) if p != p1])]
            fibers = tuple((p, rng.choice([q for q in range(1, p) if gcd(p, q) == 1])) for p in cones)
            s = SeifertSymbol(rng.randint(-1000, 1000), 0, True, fibers)
            assert normalize(s) == s
            assert is_bad_orbifold(base_orbifold(s))
            e = euler_number(s)
            assert e != 0
            assert classify_geometry(orbifold_euler_characteristic(base_orbifold(s)), e) is Geometry.S3
