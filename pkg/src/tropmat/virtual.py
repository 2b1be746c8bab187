"""Balanced weights on the expected-dimension cones of a moduli complex.

The virtual weight of a matroid ``M`` with discrete data ``Gamma`` is
supported on cones of ``T_Gamma(Delta_M)`` of the expected dimension.  It is
computed here as the space of balanced weightings of those cones; when that
space is a line the solution is normalised so the least positive weight is 1.
Two special cases are constructed directly: Boolean matroids carry weight 1 on
every maximal cone, and a sum ``M' + B_1`` with a coloop carries the pullback
of the weight of ``M'`` along the projection forgetting the coloop coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .chow import format_rational
from .cycles import (TropicalCycle, balancing_defects, degree0, normalize_weights, solve_weights,
                     stable_intersect)
from .errors import (DimensionMismatch, EmptySolution, ProjectionMismatch, UnbalancedResult,
                     ValidationError)
from .matroid import Matroid, boolean, direct_sum
from .moduli import MAX_N, MAX_R, DiscreteData, ModuliComplex, ModuliCone, moduli_complex, vdim
from .polyhedra import Cone

PROVENANCES = ("solved", "boolean", "lifted-product")


@dataclass
class VirtualWeight:
    gamma: DiscreteData
    matroid: Matroid
    complex: ModuliComplex
    cycle: TropicalCycle
    support: List[ModuliCone]
    provenance: str
    solution_dim: int = 1
    basis: List[List[Fraction]] = field(default_factory=list)
    indices: Dict[Cone, int] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.cycle.dim

    def weight_of(self, mc: ModuliCone) -> Fraction:
        return self.cycle.weight(mc.cone)

    def is_balanced(self) -> bool:
        return not balancing_defects(self.cycle)

    def to_json(self) -> Dict:
        target = self.complex.target
        support = []
        for mc in self.support:
            entry = mc.type.describe(target)
            entry["weight"] = format_rational(self.weight_of(mc))
            support.append(entry)
        out = {"provenance": self.provenance, "solution_dim": self.solution_dim,
               "dim": self.dim, "gamma": self.gamma.to_json(),
               "matroid": self.matroid.to_json(), "cycle": self.cycle.to_json(),
               "support": support, "balanced": self.is_balanced()}
        if self.solution_dim != 1:
            out["basis"] = [[format_rational(x) for x in v] for v in self.basis]
        return out


def _complex(gamma: DiscreteData, m: Matroid, max_r: int, max_n: int) -> ModuliComplex:
    if m.n != gamma.n:
        raise ValidationError(f"discrete data lives over {{0..{gamma.n}}}, matroid over {{0..{m.n}}}")
    return moduli_complex(gamma, m, max_r=max_r, max_n=max_n)


def candidate_support(m: Matroid, gamma: DiscreteData, c1beta: int,
                      complex: Optional[ModuliComplex] = None, max_r: int = MAX_R,
                      max_n: int = MAX_N) -> List[ModuliCone]:
    """Cones of ``T_Gamma(Delta_M)`` whose dimension is the expected one,
    faces of larger cones included."""
    mc = complex if complex is not None else _complex(gamma, m, max_r, max_n)
    return mc.cones_of_dim(vdim(gamma, m.d, c1beta))


def solve_virtual_weight(m: Matroid, gamma: DiscreteData, c1beta: int,
                         max_r: int = MAX_R, max_n: int = MAX_N) -> VirtualWeight:
    """Balanced weights on the candidate support.

    Raises :class:`EmptySolution` when only the zero weighting balances.  A
    solution space of dimension above one is reported through
    ``solution_dim`` and ``basis``; the cycle then carries the first basis
    vector, unnormalised.
    """
    mc = _complex(gamma, m, max_r, max_n)
    k = vdim(gamma, m.d, c1beta)
    support = candidate_support(m, gamma, c1beta, complex=mc)
    cones = [s.cone for s in support]
    basis = solve_weights(cones)
    if not basis:
        raise EmptySolution(f"no nonzero balanced weighting on the {len(cones)} cones of dimension {k}")
    vec = normalize_weights(basis[0]) if len(basis) == 1 else basis[0]
    cycle = TropicalCycle(mc.ambient.dim, k, dict(zip(cones, vec)))
    return VirtualWeight(gamma, m, mc, cycle, support, "solved", len(basis), basis)


def boolean_weight(gamma: DiscreteData, n: Optional[int] = None, max_r: int = MAX_R,
                   max_n: int = MAX_N) -> VirtualWeight:
    """Weight 1 on every maximal cone of ``T_Gamma(Delta_n)``."""
    n = gamma.n if n is None else n
    if n != gamma.n:
        raise ValidationError(f"discrete data lives over {{0..{gamma.n}}}, not {{0..{n}}}")
    m = boolean(n + 1)
    mc = _complex(gamma, m, max_r, max_n)
    k = vdim(gamma, m.d, 0)
    support = mc.cones_of_dim(k)
    tops = {c.cone for c in mc.maximal_cones()}
    if any(c.cone not in tops for c in support) or len(tops) != len(support):
        raise UnbalancedResult("complex over the permutohedral fan is not pure")
    cycle = TropicalCycle(mc.ambient.dim, k, {s.cone: 1 for s in support})
    if balancing_defects(cycle):
        raise UnbalancedResult("weight 1 on the maximal cones is not balanced")
    return VirtualWeight(gamma, m, mc, cycle, support, "boolean")


# -- coloop lift ---------------------------------------------------------------------


def lattice_projection(n: int) -> List[List[int]]:
    """Matrix of ``R^{n+1}/R1 -> R^n/R1`` forgetting the last ground element,
    in the coordinates ``x_i - x_last``."""
    rows = []
    for i in range(n - 1):
        rows.append([int(j == i) - int(j == n - 1) for j in range(n)])
    return rows


def moduli_projection(big: ModuliComplex, small: ModuliComplex) -> List[List[Fraction]]:
    """Linear map between ambients induced by forgetting the last coordinate."""
    a, b = big.ambient, small.ambient
    if a.r != b.r or a.n != b.n + 1:
        raise ProjectionMismatch("ambients do not differ by one target coordinate")
    p = lattice_projection(a.n)
    for i, (u, v) in enumerate(zip(big.gamma.directions, small.gamma.directions)):
        if tuple(linalg.matvec(p, u)) != tuple(v):
            raise ProjectionMismatch(f"leg {i} direction {u} does not project to {v}")
    npairs = len(a.pairs)
    cols = []
    for j in range(a.dim):
        e = [int(i == j) for i in range(a.dim)]
        d, h = a.representative(e)
        cols.append(b.coords(d[:npairs], linalg.matvec(p, h) if p else []))
    return linalg.transpose(cols, b.dim)


def _relative_index(images: Sequence[Sequence], host: Cone) -> int:
    """``[N_host : span of images]`` for vectors spanning the span of ``host``."""
    basis = host.lattice_basis()
    m = host.ambient_dim
    coords = [linalg.coordinates(v, basis, m) for v in images]
    if any(c is None for c in coords):
        raise ProjectionMismatch("image leaves the span of its host cone")
    if any(x.denominator != 1 for c in coords for x in c):
        raise ProjectionMismatch("image lattice is not contained in the host lattice")
    return linalg.lattice_index(coords, len(basis))


def product_lift(base: VirtualWeight, gamma: DiscreteData, max_r: int = MAX_R,
                 max_n: int = MAX_N) -> VirtualWeight:
    """Pull ``base`` (for ``M'``) back to ``M' + B_1``, whose fan is ``Delta_{M'} x R``.

    ``gamma`` must have the same legs as ``base.gamma`` and project onto it.
    A cone gets the weight of the support cone containing its image, times
    the lattice index of the image; the indices are recorded and are 1 in all
    the shipped examples.
    """
    m = direct_sum(base.matroid, boolean(1))
    if gamma.n != m.n or gamma.r != base.gamma.r:
        raise ProjectionMismatch("discrete data does not match M' + B_1")
    mc = _complex(gamma, m, max_r, max_n)
    proj = moduli_projection(mc, base.complex)
    k = base.dim + 1
    small_dim = base.complex.ambient.dim
    support, weights = [], {}
    indices: Dict[Cone, int] = {}
    for c in mc.cones_of_dim(k):
        image = Cone.from_generators(small_dim, [linalg.matvec(proj, r) for r in c.cone.rays],
                                     [linalg.matvec(proj, v) for v in c.cone.lineality])
        if image.dim != base.dim:
            continue
        hosts = [s for s in base.cycle.weights if s.contains_cone(image)]
        if len(hosts) > 1:
            raise ProjectionMismatch("image lies in several support cones")
        if not hosts:
            continue
        lat = [linalg.matvec(proj, v) for v in c.cone.lattice_basis()]
        index = _relative_index(lat, hosts[0])
        indices[c.cone] = index
        support.append(c)
        weights[c.cone] = base.cycle.weights[hosts[0]] * index
    cycle = TropicalCycle(mc.ambient.dim, k, weights)
    if balancing_defects(cycle):
        raise UnbalancedResult("lifted weight is not balanced")
    return VirtualWeight(gamma, m, mc, cycle, support, "lifted-product", indices=indices)


def pushforward_check(lift: VirtualWeight, base: VirtualWeight) -> Tuple[bool, Dict[Cone, int]]:
    """Whether every support cone of ``base`` is hit by lifted cones whose
    images carry multiplicity 1 and whose weights agree."""
    proj = moduli_projection(lift.complex, base.complex)
    small_dim = base.complex.ambient.dim
    hit: Dict[Cone, int] = {}
    ok = True
    for c, w in lift.cycle.weights.items():
        image = Cone.from_generators(small_dim, [linalg.matvec(proj, r) for r in c.rays],
                                     [linalg.matvec(proj, v) for v in c.lineality])
        lat = [linalg.matvec(proj, v) for v in c.lattice_basis()]
        if image not in base.cycle.weights:
            ok = False
            continue
        if _relative_index(lat, image) != 1 or base.cycle.weights[image] != w:
            ok = False
        hit[image] = hit.get(image, 0) + 1
    return ok and set(hit) == set(base.cycle.weights), hit


# -- reconstruction -------------------------------------------------------------------


def _check_constraint(vw: VirtualWeight, leg: int, z: TropicalCycle):
    n = vw.gamma.n
    if not 0 <= leg < vw.gamma.r:
        raise ValidationError(f"leg {leg} outside 0..{vw.gamma.r - 1}")
    if z.ambient_dim != n:
        raise DimensionMismatch(f"constraint for leg {leg} lives in R^{z.ambient_dim}, not R^{n}")
    delta = vw.gamma.directions[leg]
    if any(delta) and not all(linalg.in_span(delta, c.lineality, n) if c.lineality else False
                              for c in z.weights):
        raise ValidationError(f"leg {leg} has nonzero contact; its constraint must be "
                              "invariant along the leg direction")


def _pullback(rows: List[List[Fraction]], z: TropicalCycle, m: int) -> TropicalCycle:
    """Preimage of ``z`` under a surjective linear map ``R^m -> R^k``, each
    cone weighted by ``[Z^k : image lattice + lattice of the cone]``."""
    k = len(rows)
    image_lattice = [linalg.matvec(rows, v) for v in _unit_vectors(m)]
    t = linalg.transpose(rows)
    w = {}
    for c, x in z.weights.items():
        ineqs, eqs = c.hrep()
        pre = Cone.from_constraints(m, [linalg.matvec(t, a) for a in ineqs],
                                    [linalg.matvec(t, b) for b in eqs])
        index = linalg.lattice_index(list(image_lattice) + list(c.lattice_basis()), k)
        w[pre] = w.get(pre, 0) + x * index
    return TropicalCycle(m, m - (k - z.dim), w)


def evaluation_pullback(vw: VirtualWeight, constraints: Sequence[Tuple[int, TropicalCycle]]
                        ) -> TropicalCycle:
    """Preimage of the product of the constraint cycles under the stacked
    evaluation maps, which must be jointly surjective."""
    mc = vw.complex
    rows = []
    for leg, z in constraints:
        _check_constraint(vw, leg, z)
        rows.extend(mc.evaluation_matrix(leg))
    if linalg.rank(rows, mc.ambient.dim) != len(rows):
        raise ValidationError("evaluation maps of the constrained legs are not independent")
    product = constraints[0][1]
    for _, z in constraints[1:]:
        product = product.product(z)
    return _pullback(rows, product, mc.ambient.dim)


def _unit_vectors(m: int):
    return [[int(i == j) for i in range(m)] for j in range(m)]


def reconstruct_count(vw: VirtualWeight, constraints: Sequence[Tuple[int, TropicalCycle]],
                      seed: int = 0) -> Fraction:
    """Degree of ``c . prod ev_i^*(Z_i)`` by stable intersection."""
    if not constraints:
        raise DimensionMismatch("no constraints")
    codim = sum(vw.gamma.n - z.dim for _, z in constraints)
    if codim != vw.dim:
        raise DimensionMismatch(f"constraints have total codimension {codim}, cycle has dimension {vw.dim}")
    mc = vw.complex
    rows = []
    for leg, z in constraints:
        _check_constraint(vw, leg, z)
        rows.extend(mc.evaluation_matrix(leg))
    if linalg.rank(rows, mc.ambient.dim) == len(rows):
        return degree0(stable_intersect(vw.cycle, evaluation_pullback(vw, constraints), seed=seed))
    # jointly degenerate evaluations: pull back one constraint at a time
    acc = vw.cycle
    for step, (leg, z) in enumerate(constraints):
        ev = mc.evaluation_matrix(leg)
        if linalg.rank(ev, mc.ambient.dim) != len(ev):
            raise ValidationError(f"evaluation at leg {leg} is not surjective")
        acc = stable_intersect(acc, _pullback(ev, z, mc.ambient.dim), seed=seed + 7919 * step)
    return degree0(acc)
