"""Chow rings of loopless matroids, Chern data and curve classes.

The ring of a matroid ``M`` is generated by variables ``x_F`` for the proper
nonempty flats, subject to ``x_F x_G = 0`` for incomparable flats and to the
linear relations ``sum_{F ∋ i} x_F = sum_{F ∋ j} x_F``.  Classes are stored
by their coordinates in the Feichtner-Yuzvinsky monomial basis, where the
symbol ``x_E`` of the full ground set stands for ``-sum_{F ∋ i} x_F``.

Products are computed on chain monomials and converted back to basis
coordinates through the intersection pairing with the complementary grade.
The top-degree map sends every complete flag ``x_{F_1} ... x_{F_d}`` to 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import factorial
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import linalg
from .errors import GradeOutOfRange, LoopyMatroid, MatroidMismatch, OutOfRange, WrongGrade
from .fan import indicator_vector
from .matroid import Flat, Matroid

# a chain monomial: ((flat id, exponent), ...) with flats increasing
Monomial = Tuple[Tuple[int, int], ...]
Poly = Dict[Monomial, Fraction]


class ChowRing:
    """Graded Chow ring ``A*(M)`` of a loopless matroid."""

    def __init__(self, matroid: Matroid):
        self.matroid = matroid
        self.flats: List[Flat] = matroid.proper_flats()
        self.ground = matroid.ground_set
        self.d = matroid.d
        self.index = {f: i for i, f in enumerate(self.flats)}
        self.top_id = len(self.flats)  # stands for the ground set E
        self._rank = [matroid.rank_of(f) for f in self.flats] + [matroid.rank]
        self._sets = list(self.flats) + [self.ground]
        nf = len(self._sets)
        self._below = [[self._sets[a] < self._sets[b] for b in range(nf)] for a in range(nf)]
        self._between: Dict[Tuple[int, int], List[int]] = {}
        self._deg_cache: Dict[Monomial, Fraction] = {}
        self._bases: Dict[int, List[Tuple[Tuple[int, ...], Tuple[int, ...]]]] = {}
        self._expansions: Dict[Tuple, Poly] = {}
        self._gram_inv: Dict[int, List[List[Fraction]]] = {}

    def __eq__(self, other):
        return isinstance(other, ChowRing) and self.matroid == other.matroid

    def __hash__(self):
        return hash(self.matroid)

    # -- chain monomials --------------------------------------------------------

    def _comparable(self, a: int, b: int) -> bool:
        return a == b or self._below[a][b] or self._below[b][a]

    def monomial(self, factors: Dict[int, int]) -> Optional[Monomial]:
        """Sorted chain monomial, or ``None`` when the flats do not form a chain."""
        items = sorted(((f, e) for f, e in factors.items() if e), key=lambda t: self._rank[t[0]])
        for (a, _), (b, _) in zip(items, items[1:]):
            if not self._below[a][b]:
                return None
        return tuple(items)

    def _mul_monomials(self, m1: Monomial, m2: Monomial) -> Optional[Monomial]:
        fac = dict(m1)
        for f, e in m2:
            fac[f] = fac.get(f, 0) + e
        return self.monomial(fac)

    def _mul_polys(self, p: Poly, q: Poly) -> Poly:
        out: Poly = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                m = self._mul_monomials(m1, m2)
                if m is not None:
                    out[m] = out.get(m, 0) + c1 * c2
        return {m: c for m, c in out.items() if c}

    def _strictly_between(self, lo: Optional[int], hi: int) -> List[int]:
        key = (-1 if lo is None else lo, hi)
        got = self._between.get(key)
        if got is None:
            got = [g for g in range(len(self.flats))
                   if self._below[g][hi] and (lo is None or self._below[lo][g])]
            self._between[key] = got
        return got

    def monomial_degree(self, m: Monomial) -> Fraction:
        """Degree of a chain monomial of total degree ``d``.

        A repeated factor ``x_F`` is rewritten with the linear relation for a
        pair ``i0 in F`` minus the previous flat and ``j0`` in the next flat
        minus ``F``; every surviving term inserts a new flat next to ``F``.
        """
        got = self._deg_cache.get(m)
        if got is not None:
            return got
        if sum(e for _, e in m) != self.d:
            raise WrongGrade("degree is defined on the top grade only")
        pos = next((i for i, (_, e) in enumerate(m) if e > 1), None)
        if pos is None:
            val = Fraction(1)
        else:
            f, e = m[pos]
            lo = m[pos - 1][0] if pos > 0 else None
            hi = m[pos + 1][0] if pos + 1 < len(m) else self.top_id
            fset = self._sets[f]
            i0 = min(fset - (self._sets[lo] if lo is not None else frozenset()))
            j0 = min(self._sets[hi] - fset)
            base = dict(m)
            base[f] = e - 1
            val = Fraction(0)
            for g in self._strictly_between(lo, f):
                if i0 in self._sets[g]:
                    fac = dict(base)
                    fac[g] = 1
                    val -= self.monomial_degree(self.monomial(fac))
            for g in self._strictly_between(f, hi):
                if j0 not in self._sets[g]:
                    fac = dict(base)
                    fac[g] = 1
                    val -= self.monomial_degree(self.monomial(fac))
        self._deg_cache[m] = val
        return val

    def poly_degree(self, p: Poly) -> Fraction:
        return sum((c * self.monomial_degree(m) for m, c in p.items()), Fraction(0))

    # -- Feichtner-Yuzvinsky basis --------------------------------------------

    def fy_basis(self, k: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """Basis monomials of grade ``k`` as (flat ids, exponents); the id
        ``top_id`` denotes ``x_E``."""
        if not 0 <= k <= self.d:
            raise GradeOutOfRange(f"grade {k} outside [0, {self.d}]")
        if k in self._bases:
            return self._bases[k]
        out = []
        nsets = len(self._sets)

        def grow(chain, exps, last_rank, last, total):
            if total == k:
                out.append((tuple(chain), tuple(exps)))
                return
            for g in range(nsets):
                if last is not None and not self._below[last][g]:
                    continue
                cap = self._rank[g] - last_rank - 1
                for a in range(1, min(cap, k - total) + 1):
                    grow(chain + [g], exps + [a], self._rank[g], g, total + a)

        grow([], [], 0, None, 0)
        out.sort(key=lambda t: (len(t[0]), [sorted(self._sets[i]) for i in t[0]], t[1]))
        self._bases[k] = out
        return out

    def _x_top(self, chain_below: Sequence[int]) -> Poly:
        """``x_E`` written in proper flats, using an element of the largest
        flat in ``chain_below`` when there is one."""
        i = min(self._sets[chain_below[-1]]) if chain_below else 0
        return {((g, 1),): Fraction(-1) for g in range(len(self.flats)) if i in self._sets[g]}

    def expansion(self, chain: Sequence[int], exps: Sequence[int]) -> Poly:
        """A basis monomial as a combination of chain monomials."""
        key = (tuple(chain), tuple(exps))
        got = self._expansions.get(key)
        if got is not None:
            return got
        fac = {f: e for f, e in zip(chain, exps) if f != self.top_id}
        base = self.monomial(fac)
        p: Poly = {} if base is None else {base: Fraction(1)}
        if self.top_id in chain and p:
            a = exps[list(chain).index(self.top_id)]
            xt = self._x_top([f for f in chain if f != self.top_id])
            for _ in range(a):
                p = self._mul_polys(p, xt)
        self._expansions[key] = p
        return p

    def dim(self, k: int) -> int:
        if k < 0 or k > self.d:
            return 0
        return len(self.fy_basis(k))

    def dims(self) -> List[int]:
        return [self.dim(k) for k in range(self.d + 1)]

    def pairing_matrix(self, k: int) -> List[List[Fraction]]:
        """``deg(b_i * b'_j)`` for basis elements of grades ``k`` and ``d - k``."""
        lo = [self.expansion(*b) for b in self.fy_basis(k)]
        hi = [self.expansion(*b) for b in self.fy_basis(self.d - k)]
        return [[self.poly_degree(self._mul_polys(p, q)) for q in hi] for p in lo]

    def _coords_from_poly(self, p: Poly, k: int) -> Tuple[Fraction, ...]:
        if k > self.d or k < 0:
            return ()
        if k not in self._gram_inv:
            g = self.pairing_matrix(k)
            self._gram_inv[k] = linalg.inverse(linalg.transpose(g))
        hi = [self.expansion(*b) for b in self.fy_basis(self.d - k)]
        pv = [self.poly_degree(self._mul_polys(p, q)) for q in hi]
        return tuple(linalg.matvec(self._gram_inv[k], pv))

    # -- classes --------------------------------------------------------------

    def element(self, coords: Sequence, k: int) -> "ChowClass":
        if not 0 <= k <= self.d:
            raise GradeOutOfRange(f"grade {k} outside [0, {self.d}]")
        if len(coords) != self.dim(k):
            raise ValueError("coordinate vector has the wrong length")
        return ChowClass(self, k, tuple(Fraction(c) for c in coords))

    def graded_piece(self, k: int) -> List["ChowClass"]:
        n = self.dim(k) if 0 <= k <= self.d else None
        if n is None:
            raise GradeOutOfRange(f"grade {k} outside [0, {self.d}]")
        return [self.element([int(i == j) for j in range(n)], k) for i in range(n)]

    def zero(self, k: int) -> "ChowClass":
        return ChowClass(self, k, (Fraction(0),) * self.dim(k))

    def one(self) -> "ChowClass":
        return self.element([1], 0)

    def from_poly(self, p: Poly) -> "ChowClass":
        grades = {sum(e for _, e in m) for m in p}
        if not grades:
            raise WrongGrade("cannot infer the grade of an empty polynomial")
        if len(grades) != 1:
            raise WrongGrade("polynomial is not homogeneous")
        k = grades.pop()
        return ChowClass(self, k, self._coords_from_poly(p, k))

    def generator(self, flat) -> "ChowClass":
        f = frozenset(flat)
        if f == self.ground:
            return self.x_top()
        return self.from_poly({((self.index[f], 1),): Fraction(1)})

    def x_top(self) -> "ChowClass":
        return self.from_poly(self._x_top([]))

    def from_monomial(self, chain: Sequence, exps: Sequence[int]) -> "ChowClass":
        """Class of ``prod x_{F_i}^{a_i}``; flats may include the ground set
        and need not form a chain (the product is then zero)."""
        fac: Dict[int, int] = {}
        for f, e in zip(chain, exps):
            f = frozenset(f)
            fid = self.top_id if f == self.ground else self.index[f]
            fac[fid] = fac.get(fid, 0) + e
        k = sum(fac.values())
        top = fac.pop(self.top_id, 0)
        m = self.monomial(fac)
        if m is None:
            return self.zero(k)
        p: Poly = {m: Fraction(1)}
        if top:
            xt = self._x_top([])
            for _ in range(top):
                p = self._mul_polys(p, xt)
        if k > self.d:
            return self.zero(k)
        return ChowClass(self, k, self._coords_from_poly(p, k))

    def multiply(self, a: "ChowClass", b: "ChowClass") -> "ChowClass":
        if a.ring != self or b.ring != self:
            raise MatroidMismatch("classes belong to different Chow rings")
        k = a.grade + b.grade
        if k > self.d:
            return ChowClass(self, k, ())
        return ChowClass(self, k, self._coords_from_poly(self._mul_polys(a.poly(), b.poly()), k))

    def degree(self, a: "ChowClass") -> Fraction:
        if a.ring != self:
            raise MatroidMismatch("class belongs to a different Chow ring")
        if a.grade != self.d:
            raise WrongGrade(f"degree needs grade {self.d}, got {a.grade}")
        return self.poly_degree(a.poly())

    def flat_sets(self, ids: Sequence[int]) -> List[List[int]]:
        return [sorted(self._sets[i]) for i in ids]


class ChowClass:
    """A homogeneous class, stored by basis coordinates."""

    __slots__ = ("ring", "grade", "coords")

    def __init__(self, ring: ChowRing, grade: int, coords: Tuple[Fraction, ...]):
        self.ring = ring
        self.grade = grade
        self.coords = coords

    def poly(self) -> Poly:
        out: Poly = {}
        if self.grade > self.ring.d:
            return out
        for c, b in zip(self.coords, self.ring.fy_basis(self.grade)):
            if c:
                for m, v in self.ring.expansion(*b).items():
                    out[m] = out.get(m, 0) + c * v
        return {m: v for m, v in out.items() if v}

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _check(self, other):
        if other.ring != self.ring:
            raise MatroidMismatch("classes belong to different Chow rings")
        if other.grade != self.grade and not (other.is_zero() or self.is_zero()):
            raise WrongGrade(f"cannot add grades {self.grade} and {other.grade}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, ChowClass):
            return NotImplemented
        self._check(other)
        if self.is_zero() and other.grade != self.grade:
            return other
        if other.is_zero() and other.grade != self.grade:
            return self
        return ChowClass(self.ring, self.grade, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.ring, self.grade, tuple(-a for a in self.coords))

    def __sub__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ChowClass(self.ring, self.grade, tuple(a * other for a in self.coords))
        if isinstance(other, ChowClass):
            return self.ring.multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        return self * (Fraction(1) / Fraction(other))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, ChowClass):
            return NotImplemented
        if self.ring != other.ring:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.grade == other.grade and self.coords == other.coords

    def __hash__(self):
        return hash((self.grade, self.coords))

    def __repr__(self):
        return f"ChowClass(grade={self.grade}, coords={[str(c) for c in self.coords]})"

    def degree(self) -> Fraction:
        return self.ring.degree(self)

    def terms(self) -> List[Dict]:
        out = []
        if self.grade > self.ring.d:
            return out
        for c, (chain, exps) in zip(self.coords, self.ring.fy_basis(self.grade)):
            if c:
                out.append({"chain": self.ring.flat_sets(chain), "exponents": list(exps),
                            "coeff": format_rational(c)})
        return out

    def to_json(self) -> List[Dict]:
        return self.terms()


def class_from_json(ring: ChowRing, data, grade: Optional[int] = None) -> ChowClass:
    """Inverse of :meth:`ChowClass.to_json`; also accepts ``{"grade", "terms"}``."""
    if isinstance(data, dict):
        grade = data.get("grade", grade)
        data = data["terms"]
    total = None
    for term in data:
        k = sum(term["exponents"])
        if grade is not None and k != grade:
            raise WrongGrade("term of the wrong grade")
        c = ring.from_monomial([frozenset(f) for f in term["chain"]], term["exponents"])
        c = c * parse_rational(term["coeff"])
        total = c if total is None else total + c
    if total is None:
        if grade is None:
            raise WrongGrade("empty class needs an explicit grade")
        return ring.zero(grade)
    return total


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("not a rational number")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"not a rational number: {s!r}")


# -- Newton identities ----------------------------------------------------------


def _entry(xs: Sequence, i: int):
    """``xs`` holds ``x_1, x_2, ...``; missing entries are zero."""
    return xs[i - 1] if 1 <= i <= len(xs) else 0


def power_sums(xs: Sequence, top: int) -> List:
    """Power sums ``p_1 .. p_top`` of the roots whose elementary symmetric
    functions are ``xs``:
    ``p_i = x_1 p_{i-1} - x_2 p_{i-2} + ... + (-1)^i x_{i-1} p_1 + (-1)^{i+1} i x_i``.
    """
    p: List = []
    for i in range(1, top + 1):
        acc = 0
        for j in range(1, i):
            term = _entry(xs, j) * p[i - j - 1]
            acc = acc + term if j % 2 == 1 else acc - term
        last = _entry(xs, i) * i
        acc = acc + last if i % 2 == 1 else acc - last
        p.append(acc)
    return p


def elementary_from_power_sums(ps: Sequence, top: int, one=1) -> List:
    """Inverse transform ``q_0 .. q_top`` with
    ``(-1)^{i+1} i q_i = sum_{j<i} (-1)^j x_{i-j} q_j``."""
    q: List = [one]
    for i in range(1, top + 1):
        acc = 0
        for j in range(i):
            term = _entry(ps, i - j) * q[j]
            acc = acc + term if j % 2 == 0 else acc - term
        coef = Fraction(1, i) if i % 2 == 1 else Fraction(-1, i)
        q.append(acc * coef)
    return q


class ChernSequence:
    """Total Chern class ``1 + c_1 + ... + c_k`` of a virtual bundle of the
    given rank; ``entries[i-1]`` is ``c_i``."""

    def __init__(self, rank, entries: Sequence):
        self.rank = rank
        self.entries = list(entries)

    def __getitem__(self, i):
        return _entry(self.entries, i)

    def chern_character(self, top: int) -> "ChernCharacter":
        return ch_from_chern(self, top)


class ChernCharacter:
    """``ch = ch_0 + ch_1 + ...`` with ``ch_0`` the rank."""

    def __init__(self, rank, entries: Sequence):
        self.rank = rank
        self.entries = list(entries)

    def __getitem__(self, i):
        if i == 0:
            return self.rank
        return _entry(self.entries, i)


def ch_from_chern(c: ChernSequence, top: int) -> ChernCharacter:
    ps = power_sums(c.entries, top)
    return ChernCharacter(c.rank, [p * Fraction(1, factorial(i + 1)) for i, p in enumerate(ps)])


def chern_from_ch(ch: ChernCharacter, top: int, one=1) -> ChernSequence:
    scaled = [ch[i] * factorial(i) for i in range(1, top + 1)]
    q = elementary_from_power_sums(scaled, top, one)
    return ChernSequence(ch.rank, q[1:])


def top_chern_from_ch(ch: ChernCharacter, bundle_rank: int, one=1):
    """Top Chern class ``q_rank(1! ch_1, 2! ch_2, ...)`` of a bundle of the
    given rank; rank zero gives ``one``."""
    if bundle_rank < 0:
        raise ValueError("negative rank")
    scaled = [ch[i] * factorial(i) for i in range(1, bundle_rank + 1)]
    return elementary_from_power_sums(scaled, bundle_rank, one)[bundle_rank]


# -- curve classes ----------------------------------------------------------------


def curve_class_lattice(m: Matroid) -> Tuple[List[Flat], List[Tuple[int, ...]]]:
    """Integer relations ``sum_F beta_F e_F = 0`` among the rays of the
    Bergman fan, returned as the list of flats indexing the coordinates and
    a Z-basis of the relation lattice."""
    flats = m.proper_flats()
    vecs = [indicator_vector(f, m.n) for f in flats]
    if not vecs:
        return flats, []
    rows = linalg.transpose(vecs)
    if not rows or not rows[0]:
        basis = [tuple(int(i == j) for j in range(len(flats))) for i in range(len(flats))]
    else:
        basis = linalg.integer_kernel(rows, len(flats))
    return flats, sorted(basis, reverse=True)


def in_curve_lattice(m: Matroid, beta: Dict) -> bool:
    """Whether ``beta`` (pairings ``beta . D_S`` keyed by subsets ``S``) is a
    curve class of the Bergman fan: zero off the flats and annihilating the
    relations ``sum_S beta_S e_S = 0``."""
    if not m.is_loopless():
        raise LoopyMatroid("matroid has loops")
    full = m.ground_set
    total = [0] * m.n
    for s, b in beta.items():
        s = frozenset(s)
        if not s or s == full or not s <= full:
            raise OutOfRange(f"{sorted(s)} does not index a ray")
        if b and not m.is_flat(s):
            return False
        total = [x + b * y for x, y in zip(total, indicator_vector(s, m.n))]
    return not any(total)


def eulerian(n: int, k: int) -> int:
    """Number of permutations of ``n`` letters with ``k`` descents."""
    from math import comb

    return sum((-1) ** j * comb(n + 1, j) * (k + 1 - j) ** n for j in range(k + 2))
