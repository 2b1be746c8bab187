from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from tropmat.errors import AxiomViolation, EmptyGroundSet, LoopyMatroid, OutOfRange
from tropmat.matroid import (boolean, delete_contract, direct_sum, from_bases, from_json,
                             graphic, linear, uniform)

K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def subsets(m):
    for k in range(m + 1):
        yield from (frozenset(c) for c in combinations(range(m), k))


def kirchhoff_count(vertices, edges):
    # spanning trees = any cofactor of the Laplacian
    lap = [[Fraction(0)] * vertices for _ in range(vertices)]
    for a, b in edges:
        lap[a][a] += 1
        lap[b][b] += 1
        lap[a][b] -= 1
        lap[b][a] -= 1
    m = [row[1:] for row in lap[1:]]
    det = Fraction(1)
    size = len(m)
    for c in range(size):
        p = next(r for r in range(c, size) if m[r][c] != 0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, size):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return int(det)


def forest_rank(edges, subset):
    # vertices touched minus connected components
    parent = {}

    def find(v):
        while parent.setdefault(v, v) != v:
            v = parent[v]
        return v

    rank = 0
    for i in subset:
        a, b = find(edges[i][0]), find(edges[i][1])
        if a != b:
            parent[a] = b
            rank += 1
    return rank


def test_boolean_three_is_rank_three():
    m = boolean(3)
    assert (m.size, m.rank) == (3, 3)
    assert m == uniform(3, 3)


def test_uniform_two_three_has_three_bases():
    m = uniform(2, 3)
    assert m.rank == 2 and len(m.bases) == 3


def test_k4_bases_match_matrix_tree_count():
    m = graphic(K4)
    assert m.rank == 3
    assert len(m.bases) == kirchhoff_count(4, K4) == 16


def test_graphic_rank_matches_forest_oracle():
    m = graphic(K4)
    for s in subsets(6):
        assert m.rank_of(s) == forest_rank(K4, sorted(s))
    assert m.rank_of({0, 1, 3}) == 2  # triangle 012


def test_rank_examples():
    m = uniform(2, 3)
    assert m.rank_of({0, 1}) == 2
    assert m.rank_of(set()) == 0
    with pytest.raises(OutOfRange):
        m.rank_of({5})


def test_closure_examples():
    assert uniform(2, 3).closure({0}) == {0}
    assert boolean(3).closure({0, 1}) == {0, 1}
    assert graphic(K4).closure({0, 1}) == {0, 1, 3}
    with pytest.raises(OutOfRange):
        boolean(3).closure({3})


def brute_flats(m):
    out = []
    for s in subsets(m.size):
        if all(m.rank_of(s | {e}) > m.rank_of(s) for e in range(m.size) if e not in s):
            out.append(s)
    return out


@pytest.mark.parametrize("m", [uniform(2, 3), boolean(3), uniform(3, 4), graphic(K4)],
                         ids=["U23", "B3", "U34", "K4"])
def test_proper_flats_match_brute_force(m):
    full = frozenset(range(m.size))
    want = {f for f in brute_flats(m) if f and f != full}
    got = m.proper_flats()
    assert {frozenset(f) for f in got} == want
    ranks = [m.rank_of(f) for f in got]
    assert ranks == sorted(ranks)


def test_flat_counts():
    assert [sorted(f) for f in uniform(2, 3).proper_flats()] == [[0], [1], [2]]
    assert len(boolean(3).proper_flats()) == 6
    assert len(uniform(3, 4).proper_flats()) == 10


@pytest.mark.parametrize("m", range(1, 7))
def test_boolean_flat_count(m):
    assert len(boolean(m).proper_flats()) == 2 ** m - 2


def test_loops_rejected_for_flats():
    m = from_bases(3, [[0, 1]])
    assert m.loops() == {2}
    assert not m.is_loopless()
    with pytest.raises(LoopyMatroid):
        m.proper_flats()


def test_exchange_axiom_enforced():
    with pytest.raises(AxiomViolation):
        from_bases(4, [[0, 1], [2, 3]])
    with pytest.raises(AxiomViolation):
        from_bases(3, [[0, 1], [2]])


def test_empty_ground_set_rejected():
    with pytest.raises(EmptyGroundSet):
        from_bases(0, [[]])


def test_direct_sum_examples():
    assert direct_sum(boolean(1), boolean(1)) == boolean(2)
    m = direct_sum(uniform(2, 3), boolean(2))
    assert (m.size, m.rank) == (5, 4)


def test_direct_sum_flats_are_products():
    a, b = uniform(2, 3), boolean(2)
    m = direct_sum(a, b)
    fa = [frozenset()] + [frozenset(f) for f in a.flats()]
    fb = [frozenset(f) for f in b.flats()]
    want = {x | frozenset(y + 3 for y in z) for x in set(fa) for z in set(fb)}
    assert {frozenset(f) for f in m.flats()} == want


def test_direct_sum_rank_additive():
    a, b = uniform(2, 3), graphic([(0, 1), (1, 2), (0, 2)])
    m = direct_sum(a, b)
    for s in subsets(6):
        assert m.rank_of(s) == a.rank_of({x for x in s if x < 3}) + b.rank_of({x - 3 for x in s if x >= 3})


def test_delete_contract_examples():
    assert delete_contract(uniform(2, 3), 2, "delete") == boolean(2)
    assert delete_contract(uniform(2, 3), 2, "contract") == uniform(1, 2)
    with pytest.raises(OutOfRange):
        delete_contract(uniform(2, 3), 7, "delete")


def test_contract_k4_edge_is_multigraph_contraction():
    # contracting (2,3) merges vertex 3 into 2; remaining edges relabel by position
    contracted = [(0, 1), (0, 2), (0, 2), (1, 2), (1, 2)]
    assert delete_contract(graphic(K4), 5, "contract") == graphic(contracted)


def test_delete_contract_rank_formulas():
    m = graphic(K4)
    for e in range(6):
        dl, ct = m.delete(e), m.contract(e)
        for s in subsets(5):
            lifted = {x if x < e else x + 1 for x in s}
            assert dl.rank_of(s) == m.rank_of(lifted)
            assert ct.rank_of(s) == m.rank_of(lifted | {e}) - m.rank_of({e})


def test_linear_matroid_from_rational_matrix():
    m = linear([[1, 0, 1, Fraction(1, 2)], [0, 1, 1, 1]])
    assert m == uniform(2, 4)


def test_json_round_trip():
    for m in [uniform(2, 3), graphic(K4), boolean(4)]:
        assert from_json(m.to_json()) == m
    assert from_json({"n": 2, "type": "uniform", "data": 2}) == uniform(2, 3)


@st.composite
def matrices(draw):
    rows = draw(st.integers(1, 3))
    cols = draw(st.integers(1, 6))
    return [[draw(st.integers(-2, 2)) for _ in range(cols)] for _ in range(rows)]


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_rank_is_submodular_and_monotone(mat):
    m = linear(mat)
    sets = list(subsets(m.size))
    assert m.rank_of(frozenset()) == 0
    for a in sets:
        for b in sets:
            ra, rb = m.rank_of(a), m.rank_of(b)
            assert m.rank_of(a | b) + m.rank_of(a & b) <= ra + rb
            if a <= b:
                assert ra <= rb
    assert len({len(b) for b in m.bases}) == 1


@settings(max_examples=40, deadline=None)
@given(matrices(), st.data())
def test_closure_is_a_closure_operator(mat, data):
    m = linear(mat)
    a = frozenset(data.draw(st.sets(st.integers(0, m.size - 1))))
    b = a | frozenset(data.draw(st.sets(st.integers(0, m.size - 1))))
    ca = m.closure(a)
    assert a <= ca
    assert ca <= m.closure(b)
    assert m.closure(ca) == ca
    assert m.is_flat(ca)


@pytest.mark.parametrize("size", range(1, 9))
def test_uniform_submodular_exhaustive(size):
    m = uniform(min(3, size), size)
    sets = list(subsets(size))
    r = {s: m.rank_of(s) for s in sets}
    for a in sets:
        for b in sets:
            assert r[a | b] + r[a & b] <= r[a] + r[b]
