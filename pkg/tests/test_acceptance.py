"""Acceptance criteria, one test each, timed against its limit.

Run under pytest for PASS/FAIL summary lines, or directly as a script.
"""

import random
import sys
import time
from itertools import permutations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from test_chow import Presentation  # noqa: E402

from tropmat.chow import ChernSequence, ChowRing, ch_from_chern, chern_from_ch, curve_class_lattice
from tropmat.cycles import (TropicalCycle, balancing_defects, check_balanced, degree0, point_cycle,
                            stable_intersect)
from tropmat.fan import bergman_fan, indicator_vector, permutohedral_fan
from tropmat.linalg import rank
from tropmat.matroid import boolean, graphic, uniform
from tropmat.moduli import edge_direction, make_gamma, moduli_complex, vdim
from tropmat.polyhedra import Cone
from tropmat.virtual import (boolean_weight, candidate_support, product_lift, pushforward_check,
                             reconstruct_count, solve_virtual_weight)

K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
E = [frozenset({i}) for i in range(3)]


def paired_legs():
    return make_gamma(6, {E[i]: [int(k // 2 == i) for k in range(6)] for i in range(3)}, 2)


def descents(n, k):
    return sum(1 for p in permutations(range(n)) if sum(p[i] > p[i + 1] for i in range(n - 1)) == k)


def bergman_structure():
    for n in range(1, 5):
        assert bergman_fan(boolean(n + 1)) == permutohedral_fan(n)
    rays = sorted(bergman_fan(uniform(2, 3)).rays())
    assert rays == sorted(indicator_vector({i}, 2) for i in range(3))


def chow_ring():
    for n in range(1, 5):
        r = ChowRing(boolean(n + 1))
        oracle = Presentation(r.matroid)
        want = [descents(n + 1, k) for k in range(n + 1)]
        assert r.dims() == want == [oracle.dim(k) for k in range(n + 1)]
    for m in [uniform(2, 3), boolean(3), boolean(4), uniform(3, 4)]:
        r = ChowRing(m)
        for k in range(r.d + 1):
            assert rank(r.pairing_matrix(k), r.dim(r.d - k)) == r.dim(k) == r.dim(r.d - k)


def newton_layer():
    rng = random.Random(2024)
    for m in [boolean(3), boolean(4)]:
        r = ChowRing(m)
        for _ in range(100):
            c = ChernSequence(rng.randint(0, 6),
                              [r.element([rng.randint(-5, 5) for _ in range(r.dim(k))], k)
                               for k in range(1, r.d + 1)])
            assert chern_from_ch(ch_from_chern(c, r.d), r.d, one=r.one()).entries == c.entries


def curve_lattice():
    assert len(curve_class_lattice(boolean(3))[1]) == 4
    assert len(curve_class_lattice(uniform(2, 3))[1]) == 1


def balancing():
    for m in [uniform(2, 3), uniform(3, 4), graphic(K4)]:
        z = TropicalCycle.from_fan(bergman_fan(m))
        assert check_balanced(z)
        bumped = dict(z.weights)
        first = next(iter(bumped))
        bumped[first] += 1
        defects = balancing_defects(TropicalCycle(z.ambient_dim, z.dim, bumped))
        assert defects and all(any(d) for d in defects.values())


def stable_intersection():
    line = TropicalCycle.from_fan(bergman_fan(uniform(2, 3)))
    results = [stable_intersect(line, line, seed=s) for s in range(5)]
    assert [degree0(z) for z in results] == [1] * 5
    assert all(z == results[0] for z in results)


def boolean_moduli_weight():
    for r in (3, 4):
        g = make_gamma(r, {E[i]: [int(k == i) for k in range(r)] for i in range(3)}, 2)
        bw = boolean_weight(g)
        assert check_balanced(bw.cycle)
        assert bw.dim == vdim(g, 2, 0) == 2 + r - 3
        assert set(bw.cycle.weights) == {c.cone for c in bw.complex.maximal_cones()}


def line_arrangement_weight():
    g = paired_legs()
    mc = moduli_complex(g, uniform(2, 3))
    stars = [c for c in mc.cones if c.dim == 3]
    assert stars
    tree = stars[0].type.tree
    assert len(tree.clusters) == 3 and all(v == 3 for v in tree.valences())
    assert all(any(edge_direction(g, c)) for c in tree.clusters)
    support = candidate_support(uniform(2, 3), g, 2, complex=mc)
    assert support and {c.dim for c in support} == {2}
    vw = solve_virtual_weight(uniform(2, 3), g, 2)
    assert vw.solution_dim == 1
    assert set(vw.cycle.weights) == {c.cone for c in support}
    assert set(vw.cycle.weights.values()) == {1}
    assert check_balanced(vw.cycle)


def coloop_lift():
    base = solve_virtual_weight(uniform(2, 3), paired_legs(), 2)
    unit = lambda k: [int(j == k) for j in range(6)]
    g = make_gamma(6, {frozenset({0}): unit(0), frozenset({0, 3}): unit(1), frozenset({1}): unit(2),
                       frozenset({1, 3}): unit(3), frozenset({2}): [0, 0, 0, 0, 1, 1]}, 3)
    lift = product_lift(base, g)
    assert lift.dim == 3 and check_balanced(lift.cycle)
    ok, hit = pushforward_check(lift, base)
    assert ok and set(lift.indices.values()) == {1}


def reconstruction():
    g = make_gamma(5, {E[i]: [int(k == i) for k in range(5)] for i in range(3)}, 2)
    bw = boolean_weight(g)
    counts = {reconstruct_count(bw, [(3, point_cycle(2)), (4, point_cycle(2))], seed=s) for s in range(5)}
    assert counts == {1}


CRITERIA = [
    (1, "Bergman and permutohedral fans", 1, bergman_structure),
    (2, "Chow ring dimensions and pairing", 30, chow_ring),
    (3, "Newton round trips", 10, newton_layer),
    (4, "curve-class lattice ranks", 1, curve_lattice),
    (5, "balancing with certificates", 5, balancing),
    (6, "stable intersection of two lines", 5, stable_intersection),
    (7, "weight one on Boolean moduli", 30, boolean_moduli_weight),
    (8, "virtual weight on the line arrangement", 120, line_arrangement_weight),
    (9, "coloop lift of the virtual weight", 60, coloop_lift),
    (10, "lines through two points", 30, reconstruction),
]


def timed(fn, limit):
    start = time.perf_counter()
    fn()
    elapsed = time.perf_counter() - start
    assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"
    return elapsed


@pytest.mark.parametrize("number,title,limit,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, limit, fn, record_property):
    record_property("criterion", f"{number}: {title}")
    record_property("limit", limit)
    record_property("elapsed", timed(fn, limit))


if __name__ == "__main__":
    failed = 0
    for number, title, limit, fn in CRITERIA:
        try:
            elapsed = timed(fn, limit)
            print(f"PASS criterion {number}: {title} ({elapsed:.2f} s < {limit} s)")
        except Exception as exc:  # report and keep going
            failed += 1
            print(f"FAIL criterion {number}: {title} ({type(exc).__name__}: {exc})")
    sys.exit(1 if failed else 0)
