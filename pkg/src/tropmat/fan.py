"""Rational fans, Bergman fans of matroids and their subdivisions.

Lattice vectors live in ``N = Z^{n+1} / Z(1, ..., 1)``.  A class is stored
by the representative with last coordinate zero, i.e. as the tuple of its
first ``n`` coordinates after subtracting the last one, so ``e_n`` becomes
``(-1, ..., -1)``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .errors import AmbientMismatch, NotAFacet
from .matroid import FlagChain, Matroid, boolean
from .polyhedra import Cone, lattice_normal as _lattice_normal

LatticeVector = Tuple[int, ...]


def indicator_vector(subset: Iterable[int], n: int) -> LatticeVector:
    """``e_S = sum_{i in S} e_i`` in ``N`` for ``S`` a subset of ``{0..n}``."""
    s = frozenset(subset)
    last = 1 if n in s else 0
    return tuple((1 if i in s else 0) - last for i in range(n))


def lift(v: Sequence[int], n: int) -> Tuple[int, ...]:
    """Representative in ``Z^{n+1}`` with last coordinate zero."""
    return tuple(v) + (0,)


def to_quotient(v: Sequence[int]) -> LatticeVector:
    """Class of a vector of ``Z^{n+1}`` in ``N``."""
    last = v[-1]
    return tuple(x - last for x in v[:-1])


class Fan:
    """A finite collection of cones closed under taking faces.

    Cones need not be simplicial or pointed.  ``labels`` optionally maps a
    cone to a combinatorial label (a flag chain for Bergman fans).
    """

    def __init__(self, ambient_dim: int, cones: Iterable[Cone],
                 labels: Optional[Dict[Cone, object]] = None, closed: bool = False):
        self.ambient_dim = ambient_dim
        cones = list(cones)
        for c in cones:
            if c.ambient_dim != ambient_dim:
                raise AmbientMismatch("cone in a different ambient space")
        if not closed:
            allc = set()
            for c in cones:
                if c not in allc:
                    allc.update(c.faces())
            cones = allc
        self.cones: Tuple[Cone, ...] = tuple(sorted(set(cones)))
        self._coneset = frozenset(self.cones)
        self.labels = dict(labels or {})
        self._max = None

    @classmethod
    def from_maximal(cls, ambient_dim: int, cones: Iterable[Cone], labels=None) -> "Fan":
        return cls(ambient_dim, cones, labels)

    def __contains__(self, cone: Cone) -> bool:
        return cone in self._coneset

    def __eq__(self, other):
        return (isinstance(other, Fan) and self.ambient_dim == other.ambient_dim
                and self._coneset == other._coneset)

    def __hash__(self):
        return hash((self.ambient_dim, self._coneset))

    def __len__(self):
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones)

    @property
    def dim(self) -> int:
        return max(c.dim for c in self.cones)

    def cones_of_dim(self, k: int) -> List[Cone]:
        return [c for c in self.cones if c.dim == k]

    def maximal_cones(self) -> List[Cone]:
        if self._max is None:
            # in a fan, a cone inside another one is one of its faces
            by_lin: Dict[tuple, List[Cone]] = {}
            for c in self.cones:
                by_lin.setdefault(c.lineality, []).append(c)
            out = []
            for c in self.cones:
                rs = set(c.rays)
                if not any(d.dim > c.dim and rs <= set(d.rays) for d in by_lin[c.lineality]):
                    out.append(c)
            self._max = out
        return list(self._max)

    def rays(self) -> List[LatticeVector]:
        return sorted({r for c in self.cones for r in c.rays})

    def f_vector(self) -> List[int]:
        lo = min(c.dim for c in self.cones)
        return [len(self.cones_of_dim(k)) for k in range(lo, self.dim + 1)]

    def is_pure(self) -> bool:
        return len({c.dim for c in self.maximal_cones()}) == 1

    def is_simplicial(self) -> bool:
        return all(c.is_simplicial() for c in self.cones)

    def is_unimodular(self) -> bool:
        return all(c.is_unimodular() for c in self.cones)

    def is_complete(self) -> bool:
        """Whether the support is all of ``R^m`` (checked on a wall graph)."""
        top = [c for c in self.maximal_cones()]
        if any(c.dim != self.ambient_dim for c in top):
            return False
        walls: Dict[Cone, int] = {}
        for c in top:
            for f in c.facets():
                walls[f] = walls.get(f, 0) + 1
        return all(v == 2 for v in walls.values())

    def check_intersections(self) -> bool:
        """Each pair of maximal cones meets in a common face."""
        top = self.maximal_cones()
        for a, b in combinations(top, 2):
            inter = a.intersection(b)
            if inter not in self._coneset:
                return False
            if not (inter.is_face_of(a) and inter.is_face_of(b)):
                return False
        return True

    def minimal_cone_containing(self, point: Sequence) -> Optional[Cone]:
        best = None
        for c in self.cones:
            if c.contains(point) and (best is None or c.dim < best.dim):
                best = c
        return best

    def support_contains(self, point: Sequence) -> bool:
        return any(c.contains(point) for c in self.maximal_cones())

    def star(self, sigma: Cone) -> List[Cone]:
        return [c for c in self.cones if sigma.is_face_of(c)]

    def label(self, cone: Cone):
        return self.labels.get(cone)

    def to_json(self) -> Dict:
        top = self.maximal_cones()
        rays = sorted({r for c in top for r in c.rays})
        idx = {r: i for i, r in enumerate(rays)}
        out = {
            "ambient_dim": self.ambient_dim,
            "rays": [list(r) for r in rays],
            "cones": sorted(sorted(idx[r] for r in c.rays) for c in top),
        }
        lin = {c.lineality for c in top}
        if lin != {()}:
            if len(lin) != 1:
                raise ValueError("fan export needs a common lineality space")
            out["lineality"] = [list(v) for v in next(iter(lin))]
        return out

    @classmethod
    def from_json(cls, obj: Dict) -> "Fan":
        m = int(obj["ambient_dim"])
        rays = [tuple(int(x) for x in r) for r in obj["rays"]]
        for r in rays:
            if len(r) != m:
                raise AmbientMismatch("ray of the wrong length")
        lin = [tuple(int(x) for x in v) for v in obj.get("lineality", [])]
        cones = [Cone.from_generators(m, [rays[i] for i in c], lin) for c in obj["cones"]]
        if not cones:
            cones = [Cone.from_generators(m, [], lin)]
        return cls(m, cones)


def lattice_normal(tau: Cone, sigma: Cone) -> LatticeVector:
    """Primitive normal vector of ``sigma`` relative to its facet ``tau``."""
    if tau.ambient_dim != sigma.ambient_dim:
        raise AmbientMismatch("cones in different ambient spaces")
    if tau.dim != sigma.dim - 1 or not tau.is_face_of(sigma):
        raise NotAFacet(f"{tau} is not a facet of {sigma}")
    return _lattice_normal(tau, sigma)


# -- Bergman fans ---------------------------------------------------------------


def chain_cone(chain: FlagChain, n: int) -> Cone:
    return Cone(n, [indicator_vector(f, n) for f in chain])


def bergman_fan(m: Matroid) -> Fan:
    """Fan whose cones are spanned by the indicator vectors of chains of
    proper nonempty flats."""
    n = m.n
    labels = {}
    cones = []
    for chain in m.flag_chains():
        c = chain_cone(chain, n)
        labels[c] = chain
        cones.append(c)
    return Fan(n, cones, labels, closed=True)


def permutohedral_fan(n: int) -> Fan:
    """Fan of chains of proper nonempty subsets of ``{0..n}``, built directly
    from subsets without consulting a matroid."""
    full = frozenset(range(n + 1))
    subsets = [frozenset(s) for k in range(1, n + 1) for s in combinations(range(n + 1), k)]
    chains: List[FlagChain] = [()]
    frontier: List[FlagChain] = [(s,) for s in subsets]
    while frontier:
        chains.extend(frontier)
        frontier = [c + (s,) for c in frontier for s in subsets if c[-1] < s and s != full]
    labels = {}
    cones = []
    for chain in chains:
        c = chain_cone(chain, n)
        labels[c] = chain
        cones.append(c)
    return Fan(n, cones, labels, closed=True)


def is_subfan(small: Fan, big: Fan) -> bool:
    if small.ambient_dim != big.ambient_dim:
        raise AmbientMismatch("fans live in different spaces")
    return all(c in big for c in small.cones)


# -- subdivisions ---------------------------------------------------------------


def stellar_subdivision(fan: Fan, v: Sequence[int]) -> Fan:
    """Stellar subdivision of a pointed simplicial fan at a lattice vector
    ``v`` of its support."""
    v = linalg.primitive(v)
    host = fan.minimal_cone_containing(v)
    if host is None:
        raise ValueError("vector is outside the support")
    if host.dim == 1:
        return fan
    new = []
    for c in fan.maximal_cones():
        if not host.is_face_of(c):
            new.append(c)
            continue
        for r in host.rays:
            rays = [x for x in c.rays if x != r] + [v]
            new.append(Cone(fan.ambient_dim, rays))
    return Fan(fan.ambient_dim, new)


def barycentric_subdivision(fan: Fan) -> Fan:
    """Barycentric subdivision of a pointed simplicial fan: one ray per
    nonzero cone (the sum of its rays), cones indexed by chains of cones."""
    nonzero = [c for c in fan.cones if c.rays]
    bary = {c: linalg.primitive(c.relative_interior_point()) for c in nonzero}
    out = []

    def extend(chain):
        top = chain[-1]
        bigger = [c for c in nonzero if c.dim == top.dim + 1 and top.is_face_of(c)]
        if not bigger:
            out.append(Cone(fan.ambient_dim, [bary[c] for c in chain]))
        for c in bigger:
            extend(chain + (c,))

    for c in nonzero:
        if c.dim == 1:
            extend((c,))
    if not out:
        out = list(fan.cones)
    return Fan(fan.ambient_dim, out)


def hyperplane_subdivision(fan: Fan, functional: Sequence) -> Fan:
    """Cut every cone by the hyperplane ``f = 0``."""
    m = fan.ambient_dim
    f = list(functional)
    neg = [-x for x in f]
    out = []
    for c in fan.maximal_cones():
        ins, eqs = c.hrep()
        for extra in ([f], [neg]):
            piece = Cone.from_constraints(m, list(ins) + extra, eqs)
            if piece.dim == c.dim:
                out.append(piece)
    return Fan(m, out)


def coarse_cells(fan: Fan) -> Fan:
    """Coarsest cell structure on the support of a pure fan.

    Two top-dimensional cones adjacent along a wall that lies in exactly
    these two cones and spanning the same linear space are merged; a merged
    region is kept only if it is convex, otherwise its pieces are kept.  A
    complete fan becomes the single cell ``R^m``.
    """
    d = fan.dim
    top = [c for c in fan.maximal_cones() if c.dim == d]
    if len(top) != len(fan.maximal_cones()):
        raise ValueError("coarsening needs a pure fan")
    parent = list(range(len(top)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    walls: Dict[Cone, List[int]] = {}
    for i, c in enumerate(top):
        for f in c.facets():
            walls.setdefault(f, []).append(i)
    spans = [tuple(map(tuple, c.span_basis())) for c in top]
    for w, owners in walls.items():
        if len(owners) == 2 and spans[owners[0]] == spans[owners[1]]:
            a, b = find(owners[0]), find(owners[1])
            if a != b:
                parent[a] = b
    groups: Dict[int, List[int]] = {}
    for i in range(len(top)):
        groups.setdefault(find(i), []).append(i)
    cells = []
    for members in groups.values():
        if len(members) == 1:
            cells.append(top[members[0]])
            continue
        mset = set(members)
        hull = Cone.from_generators(fan.ambient_dim,
                                    [r for i in members for r in top[i].generators()],
                                    [v for i in members for v in top[i].lineality])
        boundary = [w for w, owners in walls.items()
                    if sum(1 for o in owners if o in mset) == 1]
        ins, _ = hull.hrep()
        convex = hull.dim == d and all(
            any(all(linalg.dot(a, g) == 0 for g in w.generators()) for a in ins)
            for w in boundary)
        if convex:
            cells.append(hull)
        else:
            cells.extend(top[i] for i in members)
    return Fan(fan.ambient_dim, cells)


def segment_closed(fan: Fan) -> bool:
    """Whether every segment inside the support lies in a single cone.

    This holds when, for all pairs of maximal cones, the intersection of
    their spans equals the span of their intersection.
    """
    top = fan.maximal_cones()
    m = fan.ambient_dim
    for a, b in combinations(top, 2):
        ga, gb = a.generators(), b.generators()
        both = linalg.rank(ga + gb, m) if ga or gb else 0
        span_meet = a.dim + b.dim - both
        if span_meet != a.intersection(b).dim:
            return False
    return True
