"""Rational polyhedral cones with exact arithmetic.

A :class:`Cone` is stored in a canonical form: a lattice basis-free
description of its lineality space (reduced row echelon rows scaled to
primitive integer vectors) together with its primitive extreme rays reduced
modulo the lineality space.  Two cones are equal exactly when their
canonical forms agree, so cones can be used as dictionary keys.

Conversions between generators and inequalities go through cddlib in
rational mode.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import cdd

from . import linalg

IntVec = Tuple[int, ...]


def _cdd_generators(rays, lineality, ambient_dim):
    rows = [[1] + [0] * ambient_dim]
    lin = []
    for v in lineality:
        lin.append(len(rows))
        rows.append([0] + list(v))
    for v in rays:
        rows.append([0] + list(v))
    mat = cdd.Matrix(rows, number_type="fraction")
    mat.rep_type = cdd.RepType.GENERATOR
    mat.lin_set = frozenset(lin)
    return mat


def _cdd_inequalities(ineqs, eqs, ambient_dim):
    rows = []
    lin = []
    for a in eqs:
        lin.append(len(rows))
        rows.append([0] + list(a))
    for a in ineqs:
        rows.append([0] + list(a))
    if not rows:
        rows.append([1] + [0] * ambient_dim)
    mat = cdd.Matrix(rows, number_type="fraction")
    mat.rep_type = cdd.RepType.INEQUALITY
    mat.lin_set = frozenset(lin)
    return mat


def _split_generators(mat):
    rays, lin = [], []
    for i in range(mat.row_size):
        row = mat[i]
        if row[0] != 0:
            continue
        v = row[1:]
        if all(x == 0 for x in v):
            continue
        (lin if i in mat.lin_set else rays).append(v)
    return rays, lin


class Cone:
    """A rational polyhedral cone in ``R^ambient_dim``."""

    __slots__ = ("ambient_dim", "rays", "lineality", "_lin_rref", "_lin_piv",
                 "_hrep", "_dim", "_key", "_hash")

    def __init__(self, ambient_dim: int, rays: Iterable[IntVec] = (),
                 lineality: Iterable[IntVec] = (), *, _canonical: bool = False):
        self.ambient_dim = ambient_dim
        self._hrep = None
        self._dim = None
        if _canonical:
            self.lineality = tuple(lineality)
            self._lin_rref = None
            self._lin_piv = None
            self.rays = tuple(rays)
        else:
            lin_rows, piv = linalg.rref([list(v) for v in lineality], ambient_dim)
            self.lineality = tuple(linalg.primitive(r) for r in lin_rows)
            self._lin_rref = lin_rows
            self._lin_piv = piv
            reduced = set()
            for r in rays:
                v = self._reduce(r)
                if any(x != 0 for x in v):
                    reduced.add(linalg.primitive(v))
            self.rays = tuple(sorted(reduced))
        self._key = (self.ambient_dim, self.lineality, self.rays)
        self._hash = hash(self._key)

    # -- canonical form -------------------------------------------------

    def _lin_data(self):
        if self._lin_rref is None:
            self._lin_rref, self._lin_piv = linalg.rref(
                [list(v) for v in self.lineality], self.ambient_dim)
        return self._lin_rref, self._lin_piv

    def _reduce(self, v) -> List[Fraction]:
        rows, piv = self._lin_data()
        out = [Fraction(x) for x in v]
        for row, p in zip(rows, piv):
            c = out[p]
            if c:
                out = [a - c * b for a, b in zip(out, row)]
        return out

    @classmethod
    def from_generators(cls, ambient_dim: int, rays: Iterable[Sequence] = (),
                        lineality: Iterable[Sequence] = ()) -> "Cone":
        rays = [list(r) for r in rays if any(x != 0 for x in r)]
        lineality = [list(v) for v in lineality if any(x != 0 for x in v)]
        if ambient_dim == 0 or (not rays and not lineality):
            return cls(ambient_dim)
        mat = _cdd_generators(rays, lineality, ambient_dim)
        mat.canonicalize()
        r, l = _split_generators(mat)
        return cls(ambient_dim, r, l)

    @classmethod
    def from_constraints(cls, ambient_dim: int, inequalities: Iterable[Sequence] = (),
                         equations: Iterable[Sequence] = ()) -> "Cone":
        """The cone ``{x : a.x >= 0 for a in inequalities, e.x = 0 for e in equations}``."""
        ineqs = [list(a) for a in inequalities if any(x != 0 for x in a)]
        eqs = [list(a) for a in equations if any(x != 0 for x in a)]
        if ambient_dim == 0:
            return cls(0)
        poly = cdd.Polyhedron(_cdd_inequalities(ineqs, eqs, ambient_dim))
        r, l = _split_generators(poly.get_generators())
        return cls(ambient_dim, r, l)

    @classmethod
    def full_space(cls, ambient_dim: int) -> "Cone":
        return cls(ambient_dim, (), [tuple(int(i == j) for j in range(ambient_dim))
                                     for i in range(ambient_dim)])

    # -- basic invariants ----------------------------------------------

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Cone) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.dim, self._key) < (other.dim, other._key)

    def __repr__(self):
        if self.lineality:
            return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"
        return f"Cone(rays={list(self.rays)})"

    @property
    def dim(self) -> int:
        if self._dim is None:
            gens = list(self.rays) + list(self.lineality)
            self._dim = linalg.rank(gens, self.ambient_dim) if gens else 0
        return self._dim

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    def is_pointed(self) -> bool:
        return not self.lineality

    def generators(self) -> List[IntVec]:
        return list(self.rays) + list(self.lineality)

    def span_basis(self) -> List[List[Fraction]]:
        rows, _ = linalg.rref(self.generators(), self.ambient_dim)
        return rows

    def lattice_basis(self) -> List[IntVec]:
        """Z-basis of the saturated lattice ``span(self) ∩ Z^m``."""
        return linalg.saturated_basis(self.generators(), self.ambient_dim)

    def annihilator(self) -> List[IntVec]:
        """Integer basis of linear forms vanishing on ``span(self)``."""
        gens = self.generators()
        if not gens:
            return [tuple(int(i == j) for j in range(self.ambient_dim))
                    for i in range(self.ambient_dim)]
        return [linalg.primitive(v) for v in linalg.nullspace(gens, self.ambient_dim)]

    def is_simplicial(self) -> bool:
        return len(self.rays) + len(self.lineality) == self.dim

    def is_unimodular(self) -> bool:
        """Pointed simplicial cone whose rays span a saturated lattice."""
        if not self.is_simplicial():
            return False
        gens = self.generators()
        if not gens:
            return True
        return all(x == 1 for x in linalg.elementary_divisors(gens, self.ambient_dim))

    # -- inequality description ------------------------------------------

    def hrep(self) -> Tuple[Tuple[IntVec, ...], Tuple[IntVec, ...]]:
        """Facet inequalities ``a.x >= 0`` and equations ``e.x = 0``."""
        if self._hrep is None:
            if self.ambient_dim == 0:
                self._hrep = ((), ())
            elif not self.rays and not self.lineality:
                eqs = tuple(tuple(int(i == j) for j in range(self.ambient_dim))
                            for i in range(self.ambient_dim))
                self._hrep = ((), eqs)
            else:
                mat = _cdd_generators(self.rays, self.lineality, self.ambient_dim)
                ineq = cdd.Polyhedron(mat).get_inequalities()
                ins, eqs = [], []
                for i in range(ineq.row_size):
                    a = ineq[i][1:]
                    if all(x == 0 for x in a):
                        continue
                    (eqs if i in ineq.lin_set else ins).append(linalg.primitive(a))
                if eqs:
                    rows, _ = linalg.rref(eqs, self.ambient_dim)
                    eqs = [linalg.primitive(r) for r in rows]
                self._hrep = (tuple(sorted(set(ins))), tuple(eqs))
        return self._hrep

    @property
    def inequalities(self):
        return self.hrep()[0]

    @property
    def equations(self):
        return self.hrep()[1]

    def contains(self, point: Sequence) -> bool:
        ins, eqs = self.hrep()
        return (all(linalg.dot(e, point) == 0 for e in eqs)
                and all(linalg.dot(a, point) >= 0 for a in ins))

    def contains_in_relint(self, point: Sequence) -> bool:
        ins, eqs = self.hrep()
        return (all(linalg.dot(e, point) == 0 for e in eqs)
                and all(linalg.dot(a, point) > 0 for a in ins))

    def contains_cone(self, other: "Cone") -> bool:
        if not all(self.contains(r) for r in other.rays):
            return False
        return all(self.contains(v) and self.contains([-x for x in v])
                   for v in other.lineality)

    def relative_interior_point(self) -> Tuple[int, ...]:
        pt = [0] * self.ambient_dim
        for r in self.rays:
            pt = [a + b for a, b in zip(pt, r)]
        return tuple(pt)

    # -- faces --------------------------------------------------------------

    def _face_from_rays(self, idx: FrozenSet[int]) -> "Cone":
        rays = tuple(self.rays[i] for i in sorted(idx))
        f = Cone(self.ambient_dim, rays, self.lineality, _canonical=True)
        f._lin_rref, f._lin_piv = self._lin_data()
        return f

    def facets(self) -> List["Cone"]:
        ins, _ = self.hrep()
        out = {}
        for a in ins:
            idx = frozenset(i for i, r in enumerate(self.rays) if linalg.dot(a, r) == 0)
            f = self._face_from_rays(idx)
            out[f.key] = f
        return sorted(out.values())

    def faces(self) -> List["Cone"]:
        """All nonempty faces, including the cone itself."""
        ins, _ = self.hrep()
        full = frozenset(range(len(self.rays)))
        tight = []
        for a in ins:
            tight.append(frozenset(i for i, r in enumerate(self.rays)
                                   if linalg.dot(a, r) == 0))
        seen = {full}
        frontier = [full]
        while frontier:
            nxt = []
            for s in frontier:
                for t in tight:
                    u = s & t
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return sorted(self._face_from_rays(s) for s in seen)

    def is_face_of(self, other: "Cone") -> bool:
        return any(f == self for f in other.faces())

    # -- constructions ----------------------------------------------------

    def intersection(self, other: "Cone") -> "Cone":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")
        a1, e1 = self.hrep()
        a2, e2 = other.hrep()
        return Cone.from_constraints(self.ambient_dim, a1 + a2, e1 + e2)

    def image(self, matrix: Sequence[Sequence], target_dim: int) -> "Cone":
        rays = [linalg.matvec(matrix, r) for r in self.rays]
        lin = [linalg.matvec(matrix, v) for v in self.lineality]
        return Cone.from_generators(target_dim, rays, lin)

    def product(self, other: "Cone") -> "Cone":
        m, k = self.ambient_dim, other.ambient_dim
        rays = [tuple(r) + (0,) * k for r in self.rays] + [(0,) * m + tuple(r) for r in other.rays]
        lin = [tuple(v) + (0,) * k for v in self.lineality] + [(0,) * m + tuple(v) for v in other.lineality]
        return Cone(m + k, rays, lin)

    def to_json(self) -> Dict:
        out = {"rays": [list(r) for r in self.rays]}
        if self.lineality:
            out["lineality"] = [list(v) for v in self.lineality]
        return out

    @classmethod
    def from_json(cls, ambient_dim: int, data: Dict) -> "Cone":
        return cls.from_generators(ambient_dim, data.get("rays", []), data.get("lineality", []))


def lattice_normal(tau: Cone, sigma: Cone) -> Tuple[int, ...]:
    """Primitive generator of ``N_sigma / N_tau`` pointing into ``sigma``.

    ``tau`` must be a codimension one face of ``sigma``; the returned integer
    vector is a representative, defined modulo ``span(tau)``.
    """
    m = sigma.ambient_dim
    bs = sigma.lattice_basis()
    k = len(bs)
    tau_coords = [linalg.coordinates(g, bs, m) for g in tau.generators()]
    tau_coords = [c for c in tau_coords if c is not None]
    if tau_coords:
        f = linalg.nullspace(tau_coords, k)
    else:
        f = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    if len(f) != 1:
        raise ValueError("not a codimension one face")
    f = linalg.primitive(f[0])
    # a generator of sigma outside span(tau) fixes the orientation
    sign = 0
    for r in sigma.rays:
        c = linalg.coordinates(r, bs, m)
        val = linalg.dot(f, c)
        if val != 0:
            sign = 1 if val > 0 else -1
            break
    if sign == 0:
        raise ValueError("sigma has no generator outside span(tau)")
    f = [sign * x for x in f]
    # an integer point u with f.u = 1
    u = _unit_preimage(f)
    vec = [0] * m
    for c, b in zip(u, bs):
        if c:
            vec = [x + c * y for x, y in zip(vec, b)]
    return tuple(vec)


def _unit_preimage(f: Sequence[int]) -> List[int]:
    """Integer vector u with ``f . u = 1`` for primitive integer ``f``."""
    coeffs = [0] * len(f)
    g = 0
    for i, a in enumerate(f):
        a = int(a)
        if a == 0:
            continue
        if g == 0:
            g = abs(a)
            coeffs = [0] * len(f)
            coeffs[i] = 1 if a > 0 else -1
            continue
        # extended gcd of g and a
        x0, x1, r0, r1 = 1, 0, g, a
        y0, y1 = 0, 1
        while r1 != 0:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        if r0 < 0:
            r0, x0, y0 = -r0, -x0, -y0
        coeffs = [x0 * c for c in coeffs]
        coeffs[i] += y0
        g = r0
    if g != 1:
        raise ValueError("functional is not primitive")
    return coeffs


def lineality_rays_removed(c: Cone) -> Cone:
    """Pointed cone obtained by dropping the lineality space."""
    return Cone(c.ambient_dim, c.rays)


def mod_span(v: Sequence, c: Cone) -> Tuple[Fraction, ...]:
    """Canonical representative of ``v`` modulo ``span(c)``."""
    rows, piv = linalg.rref(c.generators(), c.ambient_dim)
    out = [Fraction(x) for x in v]
    for row, p in zip(rows, piv):
        coef = out[p]
        if coef:
            out = [a - coef * b for a, b in zip(out, row)]
    return tuple(out)
