"""Finite matroids on the ground set ``{0, ..., n}``.

A :class:`Matroid` is determined by its list of bases.  Rank, closure and
flats are derived from the bases and memoised, which is adequate for the
ground sets of up to a dozen elements this package works with.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from . import linalg
from .errors import AxiomViolation, EmptyGroundSet, LoopyMatroid, OutOfRange, ValidationError

Flat = FrozenSet[int]
FlagChain = Tuple[Flat, ...]


class Matroid:
    """A matroid given by its bases on the ground set ``range(size)``.

    ``n`` is the largest element, so the ground set is ``{0, ..., n}``.
    """

    def __init__(self, size: int, bases: Iterable[Iterable[int]], check: bool = True):
        if size < 1:
            raise EmptyGroundSet("ground set must have at least one element")
        self.size = size
        bs = {frozenset(b) for b in bases}
        if not bs:
            raise AxiomViolation("a matroid has at least one basis")
        self.bases: Tuple[FrozenSet[int], ...] = tuple(sorted(bs, key=lambda b: sorted(b)))
        for b in self.bases:
            for e in b:
                if not 0 <= e < size:
                    raise OutOfRange(f"element {e} outside ground set of size {size}")
        if check:
            self._check_exchange()
        self._rank_cache: Dict[FrozenSet[int], int] = {}
        self._flats = None

    def _check_exchange(self):
        sizes = {len(b) for b in self.bases}
        if len(sizes) != 1:
            raise AxiomViolation("bases have different cardinalities")
        bset = set(self.bases)
        for b1 in self.bases:
            for b2 in self.bases:
                for x in b1 - b2:
                    if not any((b1 - {x}) | {y} in bset for y in b2 - b1):
                        raise AxiomViolation(
                            f"basis exchange fails for {sorted(b1)}, {sorted(b2)} at {x}")

    # -- basic data ---------------------------------------------------------

    @property
    def n(self) -> int:
        return self.size - 1

    @property
    def ground_set(self) -> FrozenSet[int]:
        return frozenset(range(self.size))

    @property
    def rank(self) -> int:
        return len(self.bases[0])

    @property
    def d(self) -> int:
        """Dimension of the Bergman fan, ``rank - 1``."""
        return self.rank - 1

    def __eq__(self, other):
        return isinstance(other, Matroid) and self.size == other.size and self.bases == other.bases

    def __hash__(self):
        return hash((self.size, self.bases))

    def __repr__(self):
        return f"Matroid(size={self.size}, rank={self.rank}, bases={len(self.bases)})"

    def _check_subset(self, s) -> FrozenSet[int]:
        s = frozenset(s)
        for e in s:
            if not 0 <= e < self.size:
                raise OutOfRange(f"element {e} outside ground set {{0..{self.n}}}")
        return s

    def rank_of(self, s: Iterable[int]) -> int:
        s = self._check_subset(s)
        r = self._rank_cache.get(s)
        if r is None:
            r = max(len(s & b) for b in self.bases)
            self._rank_cache[s] = r
        return r

    def closure(self, s: Iterable[int]) -> FrozenSet[int]:
        s = self._check_subset(s)
        r = self.rank_of(s)
        return frozenset(e for e in range(self.size) if e in s or self.rank_of(s | {e}) == r)

    def is_flat(self, s: Iterable[int]) -> bool:
        s = self._check_subset(s)
        return self.closure(s) == s

    def is_independent(self, s: Iterable[int]) -> bool:
        s = self._check_subset(s)
        return self.rank_of(s) == len(s)

    def loops(self) -> FrozenSet[int]:
        return frozenset(e for e in range(self.size) if self.rank_of({e}) == 0)

    def coloops(self) -> FrozenSet[int]:
        return frozenset(e for e in range(self.size) if all(e in b for b in self.bases))

    def is_loopless(self) -> bool:
        return not self.loops()

    # -- flats --------------------------------------------------------------

    def flats(self) -> List[Flat]:
        """All flats, sorted by rank and then lexicographically."""
        if self._flats is None:
            found = {self.closure(())}
            frontier = list(found)
            # every flat of rank k+1 is the closure of a flat of rank k plus one element
            while frontier:
                nxt = []
                for f in frontier:
                    for e in range(self.size):
                        if e not in f:
                            g = self.closure(f | {e})
                            if g not in found:
                                found.add(g)
                                nxt.append(g)
                frontier = nxt
            self._flats = sorted(found, key=lambda f: (self.rank_of(f), sorted(f)))
        return list(self._flats)

    def flats_of_rank(self, k: int) -> List[Flat]:
        return [f for f in self.flats() if self.rank_of(f) == k]

    def proper_flats(self) -> List[Flat]:
        """Proper nonempty flats; requires the matroid to be loopless."""
        if not self.is_loopless():
            raise LoopyMatroid(f"matroid has loops {sorted(self.loops())}")
        e = self.ground_set
        return [f for f in self.flats() if f and f != e]

    def flag_chains(self, max_length: int = None) -> List[FlagChain]:
        """Chains ``F_1 < ... < F_k`` of proper nonempty flats, including the
        empty chain, ordered by length."""
        flats = self.proper_flats()
        above: Dict[Flat, List[Flat]] = {f: [g for g in flats if f < g] for f in flats}
        out: List[FlagChain] = [()]
        frontier: List[FlagChain] = [(f,) for f in flats]
        while frontier:
            out.extend(frontier)
            if max_length is not None and len(frontier[0]) >= max_length:
                break
            frontier = [c + (g,) for c in frontier for g in above[c[-1]]]
        return out

    def maximal_chains(self) -> List[FlagChain]:
        return [c for c in self.flag_chains() if len(c) == self.d]

    # -- operations ---------------------------------------------------------

    def delete(self, e: int) -> "Matroid":
        """Deletion ``M \\ e`` relabelled onto ``{0, ..., n-1}``."""
        self._check_subset({e})
        if self.size == 1:
            raise EmptyGroundSet("deleting the only element")
        avoid = [b for b in self.bases if e not in b]
        if not avoid:  # e is a coloop
            avoid = [b - {e} for b in self.bases]
        return Matroid(self.size - 1, (_shift_down(b, e) for b in avoid), check=False)

    def contract(self, e: int) -> "Matroid":
        """Contraction ``M / e`` relabelled onto ``{0, ..., n-1}``."""
        self._check_subset({e})
        if self.size == 1:
            raise EmptyGroundSet("contracting the only element")
        cont = [b - {e} for b in self.bases if e in b]
        if not cont:  # e is a loop
            cont = list(self.bases)
        return Matroid(self.size - 1, (_shift_down(b, e) for b in cont), check=False)

    def restrict(self, s: Iterable[int]) -> "Matroid":
        """Restriction to ``s`` relabelled in increasing order."""
        s = sorted(self._check_subset(s))
        if not s:
            raise EmptyGroundSet("restriction to the empty set")
        pos = {e: i for i, e in enumerate(s)}
        r = self.rank_of(s)
        ss = frozenset(s)
        bs = {frozenset(pos[x] for x in b & ss) for b in self.bases if len(b & ss) == r}
        return Matroid(len(s), bs, check=False)

    def relabel(self, perm: Sequence[int]) -> "Matroid":
        """Image under the bijection ``i -> perm[i]``."""
        if sorted(perm) != list(range(self.size)):
            raise OutOfRange("not a permutation of the ground set")
        return Matroid(self.size, (frozenset(perm[x] for x in b) for b in self.bases), check=False)

    def to_json(self) -> Dict:
        return {"n": self.n, "type": "bases", "data": [sorted(b) for b in self.bases]}


def _shift_down(b: FrozenSet[int], e: int) -> FrozenSet[int]:
    return frozenset(x - 1 if x > e else x for x in b)


# -- constructors -------------------------------------------------------------


def uniform(r: int, m: int) -> Matroid:
    """Uniform matroid ``U_{r,m}`` on ``m`` elements."""
    if m < 1:
        raise EmptyGroundSet("ground set must have at least one element")
    if not 0 <= r <= m:
        raise OutOfRange(f"rank {r} outside [0, {m}]")
    return Matroid(m, combinations(range(m), r), check=False)


def boolean(m: int) -> Matroid:
    """The Boolean matroid ``B_m``: every subset of ``m`` elements is independent."""
    return uniform(m, m)


def from_bases(size: int, bases: Iterable[Iterable[int]]) -> Matroid:
    return Matroid(size, bases, check=True)


def graphic(edges: Sequence[Tuple[int, int]]) -> Matroid:
    """Cycle matroid of a multigraph; element ``i`` is ``edges[i]``."""
    if not edges:
        raise EmptyGroundSet("graph has no edges")
    verts = sorted({v for e in edges for v in e})

    def acyclic(sub):
        parent = {v: v for v in verts}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for i in sub:
            a, b = find(edges[i][0]), find(edges[i][1])
            if a == b:
                return False
            parent[a] = b
        return True

    m = len(edges)
    for r in range(min(m, len(verts)), -1, -1):
        bs = [c for c in combinations(range(m), r) if acyclic(c)]
        if bs:
            return Matroid(m, bs, check=False)
    raise AssertionError("unreachable")


def linear(matrix: Sequence[Sequence]) -> Matroid:
    """Column matroid of a rational matrix (list of rows)."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows or not rows[0]:
        raise EmptyGroundSet("matrix has no columns")
    m = len(rows[0])
    if any(len(row) != m for row in rows):
        raise AxiomViolation("ragged matrix")
    cols = [[row[j] for row in rows] for j in range(m)]
    r = linalg.rank(cols, len(rows))
    bs = [c for c in combinations(range(m), r)
          if linalg.rank([cols[j] for j in c], len(rows)) == r] if r else [()]
    return Matroid(m, bs, check=False)


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    """Direct sum; elements of ``m2`` are shifted after those of ``m1``."""
    k = m1.size
    bs = [b1 | frozenset(x + k for x in b2) for b1 in m1.bases for b2 in m2.bases]
    return Matroid(m1.size + m2.size, bs, check=False)


def from_json(obj: Dict) -> Matroid:
    """Parse ``{"n": n, "type": ..., "data": ...}``; the ground set is ``{0..n}``."""
    if not isinstance(obj, dict) or "type" not in obj:
        raise AxiomViolation("matroid JSON needs 'type'")
    kind = obj["type"]
    data = obj.get("data")
    n = obj.get("n")
    if n is not None and (not isinstance(n, int) or n < 0):
        raise EmptyGroundSet("'n' must be a nonnegative integer")
    size = None if n is None else n + 1
    if kind == "uniform":
        if size is None:
            raise AxiomViolation("uniform matroid needs 'n'")
        r = data["rank"] if isinstance(data, dict) else data
        mat = uniform(int(r), size)
    elif kind == "boolean":
        if size is None:
            raise AxiomViolation("boolean matroid needs 'n'")
        mat = boolean(size)
    elif kind == "bases":
        if size is None:
            raise AxiomViolation("matroid given by bases needs 'n'")
        mat = from_bases(size, [list(b) for b in data])
    elif kind == "graphic":
        mat = graphic([tuple(e) for e in data])
    elif kind == "linear":
        mat = linear([[Fraction(x) for x in row] for row in data])
    elif kind == "direct_sum":
        mat = reduce(direct_sum, (from_json(part) for part in data))
    else:
        raise AxiomViolation(f"unknown matroid type {kind!r}")
    if size is not None and mat.size != size:
        raise AxiomViolation(f"ground set has {mat.size} elements but n={n}")
    return mat


def delete_contract(m: Matroid, e: int, mode: str) -> Matroid:
    if mode == "delete":
        return m.delete(e)
    if mode == "contract":
        return m.contract(e)
    raise ValidationError(f"mode must be 'delete' or 'contract', not {mode!r}")
