"""Genus zero tropical stable maps to the support of a fan.

A map is a metric tree with ``r`` labelled legs, all vertices of valence at
least three, together with a position for every vertex such that leg ``i``
points in the fixed direction ``delta_i`` and every edge carries the sum of
the leg directions beyond it.  Every leg and every edge must lie in a single
cell of the target, where the target is the coarsest convex cell structure
on ``|Sigma|`` (see :func:`tropmat.fan.coarse_cells`).

A combinatorial type fixes the tree and the cell holding each leg and edge.
The maps of one type form a polyhedral cone in the parameters (position
``h`` of the vertex carrying leg 0 and the edge lengths).  These cones are
embedded in ``(R^{C(r,2)} x R^n) / Phi(R^r)`` by the tree distances between
legs together with ``h``, where ``Phi(a) = (phi(a), a_0 delta_0)`` and
``phi(a)_{ij} = a_i + a_j`` (see :class:`ModuliAmbient`).  The lattice is
generated by the split vectors and the translations, so each tree cone is
unimodular.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .errors import (InfeasibleType, NonInjectiveEmbedding, OutOfRange, UnbalancedDirections,
                     UnsupportedTarget, ValidationError)
from .fan import Fan, bergman_fan, coarse_cells, indicator_vector, segment_closed
from .matroid import Matroid, boolean
from .polyhedra import Cone

Cluster = FrozenSet[int]


# -- discrete data ------------------------------------------------------------------


class DiscreteData:
    """Contact orders of ``r`` legs with the rays ``e_S`` of the permutohedral
    fan of ``{0..n}``.  Leg ``i`` has direction ``sum_S c[S][i] e_S``."""

    def __init__(self, n: int, r: int, contact: Dict[FrozenSet[int], Sequence[int]]):
        if r < 3:
            raise OutOfRange("stable genus zero maps need at least three legs")
        if n < 0:
            raise OutOfRange("target lattice rank must be nonnegative")
        full = frozenset(range(n + 1))
        self.n = n
        self.r = r
        cleaned: Dict[FrozenSet[int], Tuple[int, ...]] = {}
        for s, orders in contact.items():
            s = frozenset(s)
            if not s or s == full or any(not 0 <= x <= n for x in s):
                raise OutOfRange(f"{sorted(s)} is not a proper nonempty subset of {{0..{n}}}")
            orders = tuple(int(c) for c in orders)
            if len(orders) != r:
                raise OutOfRange(f"contact vector for {sorted(s)} has {len(orders)} entries, expected {r}")
            if any(c < 0 for c in orders):
                raise OutOfRange("contact orders must be nonnegative")
            if any(orders):
                cleaned[s] = orders
        self.contact = dict(sorted(cleaned.items(), key=lambda t: (len(t[0]), sorted(t[0]))))
        dirs = []
        for i in range(r):
            v = [0] * n
            for s, orders in self.contact.items():
                if orders[i]:
                    es = indicator_vector(s, n)
                    v = [a + orders[i] * b for a, b in zip(v, es)]
            dirs.append(tuple(v))
        self.directions: Tuple[Tuple[int, ...], ...] = tuple(dirs)
        total = [sum(col) for col in zip(*dirs)]
        if any(total):
            raise UnbalancedDirections(f"leg directions sum to {total}, not zero")

    def __eq__(self, other):
        return (isinstance(other, DiscreteData)
                and (self.n, self.r, self.contact) == (other.n, other.r, other.contact))

    def __hash__(self):
        return hash((self.n, self.r, tuple(self.contact.items())))

    def __repr__(self):
        return f"DiscreteData(n={self.n}, r={self.r}, directions={list(self.directions)})"

    def to_json(self) -> Dict:
        return {"n": self.n, "r": self.r,
                "contact": {",".join(str(x) for x in sorted(s)): list(c)
                            for s, c in self.contact.items()}}

    @classmethod
    def from_json(cls, obj: Dict, n: Optional[int] = None) -> "DiscreteData":
        if not isinstance(obj, dict) or "r" not in obj or "contact" not in obj:
            raise ValidationError("discrete data needs 'r' and 'contact'")
        n = obj.get("n", n)
        if n is None:
            raise ValidationError("discrete data needs 'n' (or a matroid to infer it)")
        contact = {}
        for key, orders in obj["contact"].items():
            s = frozenset(int(x) for x in str(key).split(",") if x.strip() != "")
            contact[s] = orders
        return cls(int(n), int(obj["r"]), contact)


# -- trees ---------------------------------------------------------------------------


def all_clusters(r: int) -> List[Cluster]:
    """Possible edges of a tree with legs ``0..r-1``: sets ``I`` not
    containing leg 0 with ``2 <= |I| <= r - 2``."""
    legs = range(1, r)
    return [frozenset(c) for k in range(2, r - 1) for c in combinations(legs, k)]


def _compatible(a: Cluster, b: Cluster) -> bool:
    return a <= b or b <= a or not (a & b)


def enumerate_trees(r: int) -> List[Tuple[Cluster, ...]]:
    """All leg-labelled trees with vertices of valence at least three, as
    sorted tuples of pairwise compatible clusters."""
    clusters = sorted(all_clusters(r), key=lambda c: (len(c), sorted(c)))
    out: List[Tuple[Cluster, ...]] = []

    def grow(chosen: List[Cluster], start: int):
        out.append(tuple(chosen))
        if len(chosen) == r - 3:
            return
        for j in range(start, len(clusters)):
            c = clusters[j]
            if all(_compatible(c, x) for x in chosen):
                chosen.append(c)
                grow(chosen, j + 1)
                chosen.pop()

    grow([], 0)
    return out


@dataclass(frozen=True)
class Tree:
    """Rooted view of a tree given by its clusters; the root is the vertex
    carrying leg 0 and vertex ``j + 1`` sits below edge ``clusters[j]``."""

    r: int
    clusters: Tuple[Cluster, ...]

    @cached_property
    def parent(self) -> Tuple[int, ...]:
        """Parent vertex of each non-root vertex (indexed like ``clusters``)."""
        out = []
        for c in self.clusters:
            best, size = 0, self.r
            for j, d in enumerate(self.clusters):
                if c < d and len(d) < size:
                    best, size = j + 1, len(d)
            out.append(best)
        return tuple(out)

    @cached_property
    def leg_vertex(self) -> Tuple[int, ...]:
        out = [0]
        for i in range(1, self.r):
            best, size = 0, self.r
            for j, d in enumerate(self.clusters):
                if i in d and len(d) < size:
                    best, size = j + 1, len(d)
            out.append(best)
        return tuple(out)

    @property
    def num_vertices(self) -> int:
        return len(self.clusters) + 1

    def path_edges(self, v: int) -> List[int]:
        """Edges on the path from the root down to vertex ``v``."""
        out = []
        while v != 0:
            out.append(v - 1)
            v = self.parent[v - 1]
        return out[::-1]

    def valences(self) -> List[int]:
        val = [0] * self.num_vertices
        for i in range(self.r):
            val[self.leg_vertex[i]] += 1
        for j, p in enumerate(self.parent):
            val[p] += 1
            val[j + 1] += 1
        return val

    def contract(self, edges: Iterable[int]) -> "Tree":
        drop = set(edges)
        return Tree(self.r, tuple(c for j, c in enumerate(self.clusters) if j not in drop))


def edge_direction(gamma: DiscreteData, cluster: Cluster) -> Tuple[int, ...]:
    v = [0] * gamma.n
    for k in cluster:
        v = [a + b for a, b in zip(v, gamma.directions[k])]
    return tuple(v)


# -- target cells -------------------------------------------------------------------


class TargetComplex:
    """Coarse convex cell structure on the support of a pure fan."""

    def __init__(self, fan: Fan, check: bool = True):
        self.fine = fan
        self.fan = coarse_cells(fan)
        self.n = fan.ambient_dim
        self.cells: List[Cone] = list(self.fan.cones)
        self.maximal: List[int] = [self.cells.index(c) for c in self.fan.maximal_cones()]
        self.segment_closed = segment_closed(self.fan)
        if check and not self.segment_closed:
            raise UnsupportedTarget(
                "some segment inside the support crosses between cells; "
                "maps with such edges would need bivalent vertices")

    @classmethod
    def of_matroid(cls, m: Matroid, check: bool = True) -> "TargetComplex":
        return cls(bergman_fan(m), check)

    @classmethod
    def boolean(cls, n: int) -> "TargetComplex":
        return cls(bergman_fan(boolean(n + 1)))

    def minimal_cell(self, point: Sequence) -> Optional[int]:
        best = None
        for i, c in enumerate(self.cells):
            if c.contains(point) and (best is None or c.dim < self.cells[best].dim):
                best = i
        return best

    def contains(self, point: Sequence) -> bool:
        return any(self.cells[i].contains(point) for i in self.maximal)


# -- ambient lattice ----------------------------------------------------------------


class ModuliAmbient:
    """Coordinates on ``(R^{C(r,2)} x R^n) / Phi(R^r)``.

    ``Phi(a) = (phi(a), a_0 delta_0)`` with ``phi(a)_{ij} = a_i + a_j``:
    lengthening leg ``i`` by ``a_i`` adds ``a_i`` to every distance from
    that leg, and lengthening leg 0 moves its far end by ``a_0 delta_0``.
    A map is sent to the class of (distances between leg vertices, position
    ``h`` of the vertex of leg 0).  When ``delta_0 = 0`` this is the plain
    product of the metric quotient with ``R^n``.  The lattice is generated
    by the split vectors ``(v_I, 0)`` and by ``(0, e_k)``.
    """

    def __init__(self, gamma: "DiscreteData"):
        r, n = gamma.r, gamma.n
        self.gamma = gamma
        self.r = r
        self.n = n
        self.pairs = list(combinations(range(r), 2))
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        npairs = len(self.pairs)
        self.total = npairs + n
        delta0 = gamma.directions[0]
        phi_t = [[1 if i in p else 0 for p in self.pairs] + [delta0[k] if i == 0 else 0
                                                             for k in range(n)]
                 for i in range(r)]
        annihilator = linalg.integer_kernel(phi_t, self.total)
        self._dim = len(annihilator)
        gens = [linalg.matvec(annihilator, self.split_vector(c) + [0] * n)
                for c in all_clusters(r)]
        gens += [linalg.matvec(annihilator, [0] * npairs + [int(j == k) for j in range(n)])
                 for k in range(n)]
        basis = linalg.lattice_basis(gens, self._dim)
        if len(basis) != self._dim:
            raise AssertionError("split vectors and translations do not span the quotient")
        self._proj = linalg.matmul(linalg.inverse(linalg.transpose(basis)), annihilator)
        ss = linalg.matmul(self._proj, linalg.transpose(self._proj))
        self._lift = linalg.matmul(linalg.transpose(self._proj), linalg.inverse(ss))

    @property
    def dim(self) -> int:
        return self._dim

    def split_vector(self, cluster: Cluster) -> List[int]:
        return [1 if (i in cluster) != (j in cluster) else 0 for i, j in self.pairs]

    def coords(self, d: Sequence, h: Sequence) -> List[Fraction]:
        """Lattice coordinates of a distance vector ``d`` and a position ``h``."""
        return linalg.matvec(self._proj, list(d) + list(h))

    def representative(self, y: Sequence) -> Tuple[List[Fraction], List[Fraction]]:
        """One pair ``(d, h)`` whose class has coordinates ``y``."""
        v = linalg.matvec(self._lift, y)
        return v[:len(self.pairs)], v[len(self.pairs):]

    def tree_matrix(self, tree: Tree) -> List[List[Fraction]]:
        """Linear map from parameters ``(h, lengths)`` of ``tree`` to coordinates."""
        npairs = len(self.pairs)
        cols = [self.coords([0] * npairs, [int(j == k) for j in range(self.n)])
                for k in range(self.n)]
        cols += [self.coords(self.split_vector(c), [0] * self.n) for c in tree.clusters]
        return linalg.transpose(cols) if cols else []

    def _pair(self, i: int, j: int) -> Optional[int]:
        if i == j:
            return None
        return self.pair_index[(min(i, j), max(i, j))]

    def evaluation_matrix(self, leg: int) -> List[List[Fraction]]:
        """``ev_leg = h + sum_k delta_k (d_{0,leg} + d_{0,k} - d_{leg,k}) / 2``
        as an ``n x dim`` matrix on coordinates.

        Changing a representative by ``Phi(a)`` moves this by
        ``a_leg delta_leg``, so the result is exact for legs of zero contact
        and otherwise determined modulo ``delta_leg``.
        """
        if not 0 <= leg < self.r:
            raise OutOfRange(f"leg {leg} outside 0..{self.r - 1}")
        form = [[Fraction(0)] * self.total for _ in range(self.n)]
        for k in range(self.r):
            delta = self.gamma.directions[k]
            coeffs = {}
            for (a, b), s in (((0, leg), 1), ((0, k), 1), ((leg, k), -1)):
                p = self._pair(a, b)
                if p is not None:
                    coeffs[p] = coeffs.get(p, 0) + Fraction(s, 2)
            for row in range(self.n):
                if delta[row]:
                    for p, c in coeffs.items():
                        form[row][p] += delta[row] * c
        for row in range(self.n):
            form[row][len(self.pairs) + row] += 1
        return linalg.matmul(form, self._lift)


# -- types and cones -----------------------------------------------------------------


@dataclass(frozen=True)
class CombType:
    """Tree plus, for each leg and each edge, the index of the smallest
    target cell containing it."""

    tree: Tree
    leg_cells: Tuple[int, ...]
    edge_cells: Tuple[int, ...]

    @property
    def key(self):
        return (len(self.tree.clusters), tuple(sorted(c) for c in self.tree.clusters),
                self.leg_cells, self.edge_cells)

    def describe(self, target: TargetComplex) -> Dict:
        def cell(i):
            return target.cells[i].to_json()

        return {"edges": [sorted(c) for c in self.tree.clusters],
                "leg_cells": [cell(i) for i in self.leg_cells],
                "edge_cells": [cell(i) for i in self.edge_cells]}


@dataclass
class ModuliCone:
    type: CombType
    cone: Cone

    @property
    def dim(self) -> int:
        return self.cone.dim


def _vertex_rows(gamma: DiscreteData, tree: Tree) -> List[List[List[int]]]:
    """For each vertex, the ``n x (n + E)`` matrix giving its position."""
    n, ne = gamma.n, len(tree.clusters)
    dirs = [edge_direction(gamma, c) for c in tree.clusters]
    out = []
    for v in range(tree.num_vertices):
        path = tree.path_edges(v)
        rows = []
        for a in range(n):
            row = [int(a == j) for j in range(n)] + [0] * ne
            for e in path:
                row[n + e] = dirs[e][a]
            rows.append(row)
        out.append(rows)
    return out


def _constraints(gamma: DiscreteData, tree: Tree, cells: Sequence[Cone],
                 leg_cells: Sequence[int], edge_cells: Sequence[int]):
    n, ne = gamma.n, len(tree.clusters)
    pos = _vertex_rows(gamma, tree)
    ineqs = [[0] * n + [int(e == j) for j in range(ne)] for e in range(ne)]
    eqs = []

    def pin(v, cell):
        a_in, a_eq = cell.hrep()
        for a in a_in:
            ineqs.append(linalg.matvec(linalg.transpose(pos[v]), a))
        for a in a_eq:
            eqs.append(linalg.matvec(linalg.transpose(pos[v]), a))

    for i, ci in enumerate(leg_cells):
        pin(tree.leg_vertex[i], cells[ci])
    for e, ci in enumerate(edge_cells):
        pin(e + 1, cells[ci])
        pin(tree.parent[e], cells[ci])
    return ineqs, eqs


def _candidate_cells(gamma: DiscreteData, tree: Tree, target: TargetComplex):
    maxcells = [target.cells[i] for i in target.maximal]
    legs = []
    for i in range(gamma.r):
        d = gamma.directions[i]
        legs.append([j for j, c in zip(target.maximal, maxcells) if c.contains(d)])
    edges = []
    for c in tree.clusters:
        w = edge_direction(gamma, c)
        edges.append([j for j, cell in zip(target.maximal, maxcells)
                      if all(linalg.dot(a, w) == 0 for a in cell.equations)])
    return legs, edges


def _tree_cones(gamma: DiscreteData, tree: Tree, target: TargetComplex) -> List[Cone]:
    """Parameter cones of ``tree`` for assignments to maximal cells in which
    every edge can have positive length."""
    legs, edges = _candidate_cells(gamma, tree, target)
    if any(not x for x in legs) or any(not x for x in edges):
        return []
    n, ne = gamma.n, len(tree.clusters)
    found = {}
    for choice in product(*(legs + edges)):
        lc, ec = choice[: gamma.r], choice[gamma.r:]
        ineqs, eqs = _constraints(gamma, tree, target.cells, lc, ec)
        cone = Cone.from_constraints(n + ne, ineqs, eqs)
        if all(any(r[n + e] > 0 for r in cone.rays) for e in range(ne)):
            found[cone] = None
    return list(found)


def _tree_job(args):
    gamma, tree, target = args
    return _tree_cones(gamma, tree, target)


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("TROPMAT_THREADS", "1")))
    except ValueError:
        return 1


class ModuliComplex:
    """All cones of tropical stable maps of the given discrete data."""

    def __init__(self, gamma: DiscreteData, target: TargetComplex):
        if gamma.n != target.n:
            raise OutOfRange("discrete data and target live in different lattices")
        self.gamma = gamma
        self.target = target
        self.ambient = ModuliAmbient(gamma)
        self._tree_mats: Dict[Tuple[Cluster, ...], List[List[Fraction]]] = {}
        self.cones: List[ModuliCone] = self._build()
        self._by_cone = {mc.cone: mc for mc in self.cones}

    def tree_matrix(self, tree: Tree):
        got = self._tree_mats.get(tree.clusters)
        if got is None:
            got = self.ambient.tree_matrix(tree)
            self._tree_mats[tree.clusters] = got
        return got

    def _label(self, tree: Tree, params: Sequence) -> Tuple[CombType, Tree, List]:
        """Type at a parameter point of ``tree``; contracts zero-length edges."""
        n = self.gamma.n
        zero = [e for e in range(len(tree.clusters)) if params[n + e] == 0]
        keep = [e for e in range(len(tree.clusters)) if params[n + e] != 0]
        small = tree.contract(zero)
        small_params = list(params[:n]) + [params[n + e] for e in keep]
        pos = [linalg.matvec(rows, small_params) for rows in _vertex_rows(self.gamma, small)]
        leg_cells = []
        for i in range(self.gamma.r):
            p = pos[small.leg_vertex[i]]
            q = [a + b for a, b in zip(p, self.gamma.directions[i])]
            leg_cells.append(self.target.minimal_cell(q))
        edge_cells = []
        for e in range(len(small.clusters)):
            mid = [Fraction(a + b, 2) for a, b in zip(pos[e + 1], pos[small.parent[e]])]
            edge_cells.append(self.target.minimal_cell(mid))
        return CombType(small, tuple(leg_cells), tuple(edge_cells)), small, small_params

    def _build(self) -> List[ModuliCone]:
        trees = [Tree(self.gamma.r, t) for t in enumerate_trees(self.gamma.r)]
        workers = _worker_count()
        if workers > 1 and len(trees) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_tree_job, [(self.gamma, t, self.target) for t in trees],
                                        chunksize=8))
        else:
            results = [_tree_cones(self.gamma, t, self.target) for t in trees]
        m = self.ambient.dim
        out: Dict[Cone, ModuliCone] = {}
        for tree, cones in zip(trees, results):
            mat = self.tree_matrix(tree)
            for pc in cones:
                if pc.dim != _image_rank(mat, pc):
                    raise NonInjectiveEmbedding(f"tree {tree.clusters} embeds non-injectively")
                for face in pc.faces():
                    amb = Cone(m, [linalg.matvec(mat, g) for g in face.rays],
                               [linalg.matvec(mat, g) for g in face.lineality])
                    if amb in out:
                        continue
                    label, _, _ = self._label(tree, face.relative_interior_point())
                    out[amb] = ModuliCone(label, amb)
        return sorted(out.values(), key=lambda mc: (mc.dim, mc.cone.key))

    # -- queries ---------------------------------------------------------------

    @property
    def dim(self) -> int:
        return max(mc.dim for mc in self.cones) if self.cones else -1

    def types(self) -> List[CombType]:
        return [mc.type for mc in self.cones]

    def fan(self) -> Fan:
        return Fan(self.ambient.dim, [mc.cone for mc in self.cones], closed=True)

    def maximal_cones(self) -> List[ModuliCone]:
        tops = set(self.fan().maximal_cones())
        return [mc for mc in self.cones if mc.cone in tops]

    def cones_of_dim(self, k: int) -> List[ModuliCone]:
        return [mc for mc in self.cones if mc.dim == k]

    def cone_of(self, cone: Cone) -> Optional[ModuliCone]:
        return self._by_cone.get(cone)

    def cone_of_type(self, t: CombType) -> Cone:
        """Closure of the set of maps of type ``t``, computed from the type."""
        tree = t.tree
        if len(t.leg_cells) != self.gamma.r or len(t.edge_cells) != len(tree.clusters):
            raise InfeasibleType("type does not match the discrete data")
        n, ne = self.gamma.n, len(tree.clusters)
        for i, ci in enumerate(t.leg_cells):
            if not self.target.cells[ci].contains(self.gamma.directions[i]):
                raise InfeasibleType(f"leg {i} does not point into its cell")
        ineqs, eqs = _constraints(self.gamma, tree, self.target.cells, t.leg_cells, t.edge_cells)
        pc = Cone.from_constraints(n + ne, ineqs, eqs)
        if not all(any(r[n + e] > 0 for r in pc.rays) for e in range(ne)):
            raise InfeasibleType("type forces an edge to have length zero")
        mat = self.tree_matrix(tree)
        if pc.dim != _image_rank(mat, pc):
            raise NonInjectiveEmbedding("type cone embeds non-injectively")
        return Cone(self.ambient.dim, [linalg.matvec(mat, g) for g in pc.rays],
                    [linalg.matvec(mat, g) for g in pc.lineality])

    def evaluation_matrix(self, leg: int):
        return self.ambient.evaluation_matrix(leg)

    def point(self, tree: Tree, h: Sequence, lengths: Sequence) -> Tuple[Fraction, ...]:
        """Coordinates of the map with the given tree and parameters."""
        return tuple(linalg.matvec(self.tree_matrix(tree), list(h) + list(lengths)))

    def is_map(self, tree: Tree, h: Sequence, lengths: Sequence) -> bool:
        """Whether the parameters describe a map into the target support."""
        params = list(h) + list(lengths)
        pos = [linalg.matvec(rows, params) for rows in _vertex_rows(self.gamma, tree)]
        for i in range(self.gamma.r):
            p = pos[tree.leg_vertex[i]]
            if not _segment_in_cell(self.target, p, self.gamma.directions[i], ray=True):
                return False
        for e in range(len(tree.clusters)):
            a, b = pos[e + 1], pos[tree.parent[e]]
            if not _segment_in_cell(self.target, a, [y - x for x, y in zip(a, b)], ray=False):
                return False
        return True

    def contains_point(self, y: Sequence) -> bool:
        return any(mc.cone.contains(y) for mc in self.cones)


def _segment_in_cell(target: TargetComplex, start, direction, ray: bool) -> bool:
    end = [a + b for a, b in zip(start, direction)]
    for c in target.cells:
        if c.contains(start) and (c.contains(end) if not ray else
                                  c.contains(end) and all(linalg.dot(a, direction) >= 0
                                                          for a in c.inequalities)):
            return True
    return False


def _image_rank(mat, pc: Cone) -> int:
    gens = [linalg.matvec(mat, g) for g in pc.generators()]
    return linalg.rank(gens, len(mat)) if gens else 0


def evaluate(tree: Tree, gamma: DiscreteData, h: Sequence, lengths: Sequence, leg: int):
    """Position of the vertex carrying ``leg``."""
    params = list(h) + list(lengths)
    rows = _vertex_rows(gamma, tree)[tree.leg_vertex[leg]]
    return tuple(linalg.matvec(rows, params))


MAX_R = 8
MAX_N = 3


def moduli_complex(gamma: DiscreteData, target=None, max_r: int = MAX_R,
                   max_n: int = MAX_N) -> ModuliComplex:
    """Build the complex for a :class:`TargetComplex`, a matroid or ``None``
    (the permutohedral fan)."""
    if gamma.r > max_r:
        raise OutOfRange(f"r = {gamma.r} exceeds the limit {max_r}")
    if gamma.n > max_n:
        raise OutOfRange(f"n = {gamma.n} exceeds the limit {max_n}")
    if target is None:
        target = TargetComplex.boolean(gamma.n)
    elif isinstance(target, Matroid):
        target = TargetComplex.of_matroid(target)
    elif isinstance(target, Fan):
        target = TargetComplex(target)
    return ModuliComplex(gamma, target)


def vdim(gamma: DiscreteData, d: int, c1beta: int) -> int:
    """Expected dimension ``d + r - 3 - c1beta`` of maps to a ``d``-dimensional
    wonderful model with ``deg(c_1 . beta) = c1beta``."""
    return d + gamma.r - 3 - c1beta


def make_gamma(r: int, contact: Dict, n: int) -> DiscreteData:
    return DiscreteData(n, r, contact)


def evaluation(complex: ModuliComplex, mc: ModuliCone, leg: int) -> List[List[Fraction]]:
    """Exact ``ev_leg`` on the span of one cone, as an ``n x dim`` matrix
    acting on ambient coordinates of points of ``mc``."""
    if not 0 <= leg < complex.gamma.r:
        raise OutOfRange(f"leg {leg} outside 0..{complex.gamma.r - 1}")
    tree = mc.type.tree
    mat = complex.tree_matrix(tree)
    rows = _vertex_rows(complex.gamma, tree)[tree.leg_vertex[leg]]
    basis = mc.cone.span_basis()
    if not basis:
        return [[Fraction(0)] * complex.ambient.dim for _ in range(complex.gamma.n)]
    nparams = complex.gamma.n + len(tree.clusters)
    images = [linalg.matvec(rows, linalg.solve(mat, b, nparams)) for b in basis]
    # the map on span(basis), extended by zero on its orthogonal complement
    left = linalg.matmul(linalg.inverse(linalg.matmul(basis, linalg.transpose(basis))), basis)
    return linalg.matmul(linalg.transpose(images), left)


def enumerate_types(gamma: DiscreteData, target=None) -> List[CombType]:
    return moduli_complex(gamma, target).types()
