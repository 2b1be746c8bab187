"""Weighted rational fans: balancing, refinement and stable intersection.

A :class:`TropicalCycle` assigns rational weights to cones of one common
dimension ``k`` in ``R^m``.  Cones of weight zero are dropped.  The cones of
a cycle are expected to be the ``k``-dimensional cones of some fan; the
balancing check and the intersection product rely on that.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .chow import format_rational, parse_rational
from .errors import (AmbientMismatch, DimensionMismatch, EmptySolution, GenericityFailure,
                     NotASubdivision)
from .fan import Fan
from .polyhedra import Cone, lattice_normal, mod_span


class TropicalCycle:
    """Weights on ``dim``-dimensional cones of ``R^ambient_dim``."""

    def __init__(self, ambient_dim: int, dim: int, weights: Mapping[Cone, object] = ()):
        self.ambient_dim = ambient_dim
        self.dim = dim
        w: Dict[Cone, Fraction] = {}
        for c, x in dict(weights).items():
            if c.ambient_dim != ambient_dim:
                raise AmbientMismatch("cone in a different ambient space")
            if c.dim != dim:
                raise DimensionMismatch(f"cone of dimension {c.dim} in a {dim}-cycle")
            x = Fraction(x)
            if x:
                w[c] = w.get(c, Fraction(0)) + x
        self.weights: Dict[Cone, Fraction] = {c: x for c, x in sorted(w.items()) if x}

    @classmethod
    def from_fan(cls, fan: Fan, weight=1) -> "TropicalCycle":
        """Constant weight on the maximal cones of a pure fan."""
        top = fan.maximal_cones()
        dims = {c.dim for c in top}
        if len(dims) != 1:
            raise DimensionMismatch("fan is not pure")
        return cls(fan.ambient_dim, dims.pop(), {c: weight for c in top})

    def cones(self) -> List[Cone]:
        return list(self.weights)

    def weight(self, cone: Cone) -> Fraction:
        return self.weights.get(cone, Fraction(0))

    def is_zero(self) -> bool:
        return not self.weights

    def __add__(self, other: "TropicalCycle") -> "TropicalCycle":
        if (self.ambient_dim, self.dim) != (other.ambient_dim, other.dim):
            raise DimensionMismatch("cycles of different dimensions")
        w = dict(self.weights)
        for c, x in other.weights.items():
            w[c] = w.get(c, 0) + x
        return TropicalCycle(self.ambient_dim, self.dim, w)

    def scale(self, s) -> "TropicalCycle":
        return TropicalCycle(self.ambient_dim, self.dim,
                             {c: x * Fraction(s) for c, x in self.weights.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, TropicalCycle) and self.ambient_dim == other.ambient_dim
                and self.dim == other.dim and self.weights == other.weights)

    def __repr__(self):
        return f"TropicalCycle(ambient_dim={self.ambient_dim}, dim={self.dim}, cones={len(self.weights)})"

    def to_json(self) -> Dict:
        cones = []
        for c, x in self.weights.items():
            entry = c.to_json()
            entry["weight"] = format_rational(x)
            cones.append(entry)
        return {"ambient_dim": self.ambient_dim, "dim": self.dim, "cones": cones}

    @classmethod
    def from_json(cls, obj: Dict) -> "TropicalCycle":
        m = int(obj["ambient_dim"])
        k = int(obj["dim"])
        w: Dict[Cone, Fraction] = {}
        for entry in obj["cones"]:
            for r in list(entry.get("rays", [])) + list(entry.get("lineality", [])):
                if len(r) != m:
                    raise AmbientMismatch("generator of the wrong length")
            c = Cone.from_json(m, entry)
            w[c] = w.get(c, 0) + parse_rational(entry.get("weight", 1))
        return cls(m, k, w)

    def product(self, other: "TropicalCycle") -> "TropicalCycle":
        w = {a.product(b): x * y for a, x in self.weights.items() for b, y in other.weights.items()}
        return TropicalCycle(self.ambient_dim + other.ambient_dim, self.dim + other.dim, w)

    def local_weight(self, point: Sequence) -> Optional[Fraction]:
        """Weight at a point in the relative interior of top cones, ``0`` off
        the support, ``None`` on a lower-dimensional cone."""
        total = Fraction(0)
        on_boundary = False
        for c, x in self.weights.items():
            if c.contains_in_relint(point):
                total += x
            elif c.contains(point):
                on_boundary = True
        if on_boundary and total == 0:
            return None
        return total


def point_cycle(ambient_dim: int, weight=1) -> TropicalCycle:
    return TropicalCycle(ambient_dim, 0, {Cone(ambient_dim): weight})


def fundamental_cycle(ambient_dim: int) -> TropicalCycle:
    return TropicalCycle(ambient_dim, ambient_dim, {Cone.full_space(ambient_dim): 1})


# -- balancing ------------------------------------------------------------------


def _facet_map(cones: Iterable[Cone]) -> Dict[Cone, List[Cone]]:
    out: Dict[Cone, List[Cone]] = {}
    for c in cones:
        for f in c.facets():
            out.setdefault(f, []).append(c)
    return out


def balancing_defects(z: TropicalCycle) -> Dict[Cone, Tuple[Fraction, ...]]:
    """Nonzero defects ``sum_sigma w(sigma) n_{sigma,tau} mod span(tau)``."""
    if z.dim == 0:
        return {}
    out = {}
    for tau, owners in _facet_map(z.weights).items():
        total = [Fraction(0)] * z.ambient_dim
        for s in owners:
            n = lattice_normal(tau, s)
            w = z.weights[s]
            total = [a + w * b for a, b in zip(total, n)]
        defect = mod_span(total, tau)
        if any(defect):
            out[tau] = defect
    return out


def check_balanced(z: TropicalCycle) -> bool:
    return not balancing_defects(z)


def balancing_system(cones: Sequence[Cone]):
    """Linear equations on weights of ``cones`` expressing balancing.

    Returns the coefficient rows (one column per cone).
    """
    idx = {c: i for i, c in enumerate(cones)}
    rows = []
    for tau, owners in sorted(_facet_map(cones).items()):
        forms = tau.annihilator()
        normals = {s: lattice_normal(tau, s) for s in owners}
        for a in forms:
            row = [Fraction(0)] * len(cones)
            for s, n in normals.items():
                row[idx[s]] += linalg.dot(a, n)
            if any(row):
                rows.append(row)
    return rows


def solve_weights(cones: Sequence[Cone]) -> List[List[Fraction]]:
    """Basis of the space of balanced weight vectors on ``cones``."""
    cones = list(cones)
    if not cones:
        return []
    rows = balancing_system(cones)
    return linalg.nullspace(rows, len(cones)) if rows else \
        [[Fraction(int(i == j)) for j in range(len(cones))] for i in range(len(cones))]


def normalize_weights(v: Sequence[Fraction]) -> List[Fraction]:
    """Scale so the entries lean positive and the least positive entry is 1."""
    v = [Fraction(x) for x in v]
    if not any(v):
        raise EmptySolution("zero weight vector")
    pos = sum(1 for x in v if x > 0)
    neg = sum(1 for x in v if x < 0)
    if neg > pos or (neg == pos and next(x for x in v if x) < 0):
        v = [-x for x in v]
    m = min(x for x in v if x > 0)
    return [x / m for x in v]


# -- refinement and comparison ---------------------------------------------------


def refine(z: TropicalCycle, fan: Fan) -> TropicalCycle:
    """Transfer the weights of ``z`` to the ``dim``-cones of a subdivision."""
    new_cones = fan.cones_of_dim(z.dim)
    w: Dict[Cone, Fraction] = {}
    inside: Dict[Cone, List[Cone]] = {c: [] for c in z.weights}
    for c in new_cones:
        pt = c.relative_interior_point()
        hosts = [s for s in z.weights if s.contains_cone(c)]
        if not hosts:
            if any(s.contains_in_relint(pt) for s in z.weights):
                raise NotASubdivision("a new cone straddles an old one")
            continue
        if len(hosts) > 1:
            hosts = [s for s in hosts if s.contains_in_relint(pt)]
        if len(hosts) != 1:
            raise NotASubdivision("a new cone lies in several old cones")
        w[c] = z.weights[hosts[0]]
        inside[hosts[0]].append(c)
    # pieces inside each old cone must tile it
    for s, pieces in inside.items():
        if not pieces:
            raise NotASubdivision(f"{s} is not covered")
        faces_of_s = [f for f in s.faces() if f != s]
        for f, owners in _facet_map(pieces).items():
            if len(owners) == 2:
                continue
            if len(owners) == 1 and any(g.contains_cone(f) for g in faces_of_s):
                continue
            raise NotASubdivision(f"pieces inside {s} do not tile it")
    return TropicalCycle(z.ambient_dim, z.dim, w)


def _random_relint_point(c: Cone, rng: random.Random) -> Tuple[int, ...]:
    pt = [0] * c.ambient_dim
    for r in c.rays:
        a = rng.randint(1, 10 ** 6)
        pt = [x + a * y for x, y in zip(pt, r)]
    for v in c.lineality:
        a = rng.randint(-10 ** 6, 10 ** 6)
        pt = [x + a * y for x, y in zip(pt, v)]
    return tuple(pt)


def same_cycle(z1: TropicalCycle, z2: TropicalCycle, seed: int = 0, samples: int = 3) -> bool:
    """Equality of cycles up to refinement, tested on random points of the
    relative interiors of all top cones."""
    if (z1.ambient_dim, z1.dim) != (z2.ambient_dim, z2.dim):
        return False
    rng = random.Random(seed)
    for c in list(z1.weights) + list(z2.weights):
        checked = 0
        for _ in range(samples * 10):
            pt = _random_relint_point(c, rng)
            a, b = z1.local_weight(pt), z2.local_weight(pt)
            if a is None or b is None:
                continue
            if a != b:
                return False
            checked += 1
            if checked == samples:
                break
        if checked == 0:
            return False
    return True


# -- stable intersection ------------------------------------------------------------


def displacement_vector(m: int, seed: int, attempt: int) -> Tuple[Fraction, ...]:
    """Deterministic pseudo-random rational vector for a seed and attempt."""
    rng = random.Random(f"{seed}:{attempt}")
    return tuple(Fraction(rng.randint(-10 ** 6, 10 ** 6), 10 ** 6 + rng.randint(1, 997))
                 for _ in range(m))


def _pair_data(s: Cone, t: Cone, m: int):
    gens = s.generators() + t.generators()
    transversal = (linalg.rank(gens, m) if gens else 0) == m
    diff = Cone.from_generators(m, list(s.rays) + [[-x for x in r] for r in t.rays],
                                list(s.lineality) + list(t.lineality))
    return transversal, diff


def _generic_for(v, transversal: bool, diff: Cone) -> Optional[bool]:
    """``True``/``False`` for a decided pair, ``None`` when ``v`` is special."""
    if not transversal:
        if diff.dim == 0:
            return False if any(v) else None
        return None if linalg.in_span(v, diff.generators(), diff.ambient_dim) else False
    ins, _ = diff.hrep()
    vals = [linalg.dot(a, v) for a in ins]
    if any(x == 0 for x in vals):
        return None
    return all(x > 0 for x in vals)


def stable_intersect(z1: TropicalCycle, z2: TropicalCycle, seed: int = 0,
                     max_attempts: int = 16) -> TropicalCycle:
    """Stable intersection product of two fan cycles.

    For a generic displacement ``v`` the product is the sum, over pairs of
    top cones ``(sigma, tau)`` spanning ``R^m`` with ``v`` in
    ``sigma - tau``, of ``w(sigma) w(tau) [N : N_sigma + N_tau]`` times
    ``sigma ∩ tau``.  Displacements come from a seeded deterministic
    sequence; non-generic draws are retried.
    """
    m = z1.ambient_dim
    if z2.ambient_dim != m:
        raise AmbientMismatch("cycles live in different spaces")
    k = z1.dim + z2.dim - m
    if k < 0:
        raise DimensionMismatch(f"dimensions {z1.dim} and {z2.dim} are too small in R^{m}")
    pairs = []
    for s, ws in z1.weights.items():
        for t, wt in z2.weights.items():
            transversal, diff = _pair_data(s, t, m)
            pairs.append((s, ws, t, wt, transversal, diff))
    for attempt in range(max_attempts):
        v = displacement_vector(m, seed, attempt)
        decisions = [_generic_for(v, p[4], p[5]) for p in pairs]
        if any(d is None for d in decisions):
            continue
        w: Dict[Cone, Fraction] = {}
        for (s, ws, t, wt, transversal, _), hit in zip(pairs, decisions):
            if not hit:
                continue
            inter = s.intersection(t)
            if inter.dim != k:
                continue
            index = linalg.lattice_index(s.lattice_basis() + t.lattice_basis(), m)
            w[inter] = w.get(inter, 0) + ws * wt * index
        return TropicalCycle(m, k, w)
    raise GenericityFailure(f"no generic displacement found in {max_attempts} attempts")


def degree0(z: TropicalCycle) -> Fraction:
    """Total weight of a zero-dimensional cycle."""
    if z.dim != 0:
        raise DimensionMismatch(f"degree needs a 0-cycle, got dimension {z.dim}")
    return sum(z.weights.values(), Fraction(0))
