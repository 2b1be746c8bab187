import random
from itertools import combinations
from math import factorial

import pytest

from tropmat.cycles import TropicalCycle, check_balanced
from tropmat.errors import AmbientMismatch, LoopyMatroid, NotAFacet
from tropmat.fan import (Fan, barycentric_subdivision, bergman_fan, coarse_cells, indicator_vector,
                         is_subfan, lattice_normal, permutohedral_fan, segment_closed)
from tropmat.linalg import elementary_divisors
from tropmat.matroid import boolean, direct_sum, from_bases, graphic, uniform
from tropmat.polyhedra import Cone

K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def test_permutohedral_two():
    f = permutohedral_fan(2)
    assert len(f.rays()) == 6
    assert len(f.cones_of_dim(2)) == 6


def test_permutohedral_one_is_projective_line():
    f = permutohedral_fan(1)
    assert sorted(f.rays()) == [(-1,), (1,)]
    assert indicator_vector({1}, 1) == (-1,)


@pytest.mark.parametrize("n", range(1, 5))
def test_permutohedral_is_boolean_bergman(n):
    assert permutohedral_fan(n) == bergman_fan(boolean(n + 1))


@pytest.mark.parametrize("n", range(1, 5))
def test_permutohedral_face_counts(n):
    # k-cones are ordered set partitions of {0..n} into k+1 blocks
    want = [factorial(k + 1) * stirling2(n + 1, k + 1) for k in range(n + 1)]
    assert permutohedral_fan(n).f_vector() == want


@pytest.mark.parametrize("n", range(1, 4))
def test_permutohedral_complete_and_unimodular(n):
    f = permutohedral_fan(n)
    assert f.is_complete()
    assert f.is_unimodular()
    assert f.check_intersections()


def test_u23_rays():
    f = bergman_fan(uniform(2, 3))
    assert sorted(f.rays()) == sorted(indicator_vector({i}, 2) for i in range(3))
    assert [sum(c) for c in zip(*f.rays())] == [0, 0]
    assert f.dim == 1 and f.is_pure()


def test_boolean_three_is_full_fan():
    assert bergman_fan(boolean(3)) == permutohedral_fan(2)


def tropical_line_contains(u):
    m = min(u)
    return sum(1 for x in u if x == m) >= 2


def test_direct_sum_support_is_product():
    fan = bergman_fan(direct_sum(uniform(2, 3), boolean(2)))
    assert fan.dim == 3
    rng = random.Random(5)
    pts = [(a, b, c, d) for a, b, c, d in
           [tuple(rng.randint(-3, 3) for _ in range(4)) for _ in range(60)]]
    pts += [(1, 0, 0, 5), (0, 2, 0, -1), (0, 0, 3, 7), (1, 1, 0, 0)]
    for p in pts:
        # coordinates x_i - x_4; the U_{2,3} block is x_0, x_1, x_2 up to a common shift
        assert fan.support_contains(p) == tropical_line_contains(p[:3])


def test_direct_sum_of_general_fans_is_product():
    a, b = uniform(2, 3), uniform(2, 3)
    fan = bergman_fan(direct_sum(a, b))
    assert fan.dim == 3
    rng = random.Random(8)
    for _ in range(80):
        p = tuple(rng.randint(-2, 2) for _ in range(5)) + (0,)
        want = tropical_line_contains(p[:3]) and tropical_line_contains(p[3:])
        assert fan.support_contains(p[:5]) == want


@pytest.mark.parametrize("m", [uniform(2, 3), uniform(3, 4), uniform(3, 5), graphic(K4),
                               boolean(4), uniform(2, 5)],
                         ids=["U23", "U34", "U35", "K4", "B4", "U25"])
def test_bergman_cones_unimodular(m):
    f = bergman_fan(m)
    assert f.is_pure() and f.dim == m.rank - 1
    for c in f.maximal_cones():
        assert elementary_divisors(c.rays, f.ambient_dim) == (1,) * len(c.rays)
    assert is_subfan(f, permutohedral_fan(m.n))


@pytest.mark.parametrize("m", [uniform(2, 3), uniform(3, 4), graphic(K4), boolean(4)],
                         ids=["U23", "U34", "K4", "B4"])
def test_bergman_weight_one_is_balanced(m):
    assert check_balanced(TropicalCycle.from_fan(bergman_fan(m)))


def test_bergman_rejects_loops():
    with pytest.raises(LoopyMatroid):
        bergman_fan(from_bases(3, [[0, 1]]))


def test_lattice_normal_examples():
    e0, e01 = indicator_vector({0}, 2), indicator_vector({0, 1}, 2)
    tau, sigma = Cone(2, [e0]), Cone(2, [e0, e01])
    normal = lattice_normal(tau, sigma)
    # e_{01} modulo e_0
    assert normal[1] == e01[1] and normal in [tuple(a + k * b for a, b in zip(e01, e0)) for k in range(-5, 6)]
    e1 = indicator_vector({1}, 2)
    assert lattice_normal(Cone(2), Cone(2, [e1])) == e1
    with pytest.raises(NotAFacet):
        lattice_normal(Cone(2), sigma)


def test_lattice_normals_delta_three_have_index_one():
    f = permutohedral_fan(3)
    for sigma in f.cones_of_dim(3):
        for tau in sigma.facets():
            v = lattice_normal(tau, sigma)
            assert elementary_divisors(list(tau.rays) + [v], 3) == (1, 1, 1)


def test_is_subfan_examples():
    line, full = bergman_fan(uniform(2, 3)), permutohedral_fan(2)
    assert is_subfan(line, full)
    assert not is_subfan(full, line)
    assert not is_subfan(barycentric_subdivision(full), full)
    with pytest.raises(AmbientMismatch):
        is_subfan(line, permutohedral_fan(3))


def test_fan_json_round_trip():
    for f in [permutohedral_fan(2), bergman_fan(graphic(K4))]:
        assert Fan.from_json(f.to_json()) == f


def test_coarse_cells():
    assert len(coarse_cells(bergman_fan(uniform(2, 3))).maximal_cones()) == 3
    whole = coarse_cells(permutohedral_fan(2))
    assert [c.dim for c in whole.maximal_cones()] == [2]
    assert whole.maximal_cones()[0].lineality_dim == 2


def test_segment_closed():
    assert segment_closed(coarse_cells(bergman_fan(uniform(2, 3))))
    assert segment_closed(coarse_cells(permutohedral_fan(3)))
    assert not segment_closed(coarse_cells(bergman_fan(uniform(3, 4))))
    assert segment_closed(coarse_cells(bergman_fan(uniform(3, 5))))
