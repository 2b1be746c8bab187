"""Exact linear algebra over Q and Z.

Thin wrappers around sympy's ``DomainMatrix`` (gmpy2 backed when available)
and its integer normal forms.  Vectors and matrices cross the boundary as
plain lists/tuples of ``int`` or ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import (
    hermite_normal_form,
    invariant_factors,
    smith_normal_decomp,
)

Vector = Tuple
Rows = Sequence[Sequence]


def _to_frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(int(x.numerator), int(x.denominator))


def _qq(x):
    x = _to_frac(x)
    return QQ(x.numerator, x.denominator)


def qmatrix(rows: Rows, ncols: int) -> DomainMatrix:
    return DomainMatrix([[_qq(x) for x in row] for row in rows], (len(rows), ncols), QQ)


def zmatrix(rows: Rows, ncols: int) -> DomainMatrix:
    return DomainMatrix([[ZZ(int(x)) for x in row] for row in rows], (len(rows), ncols), ZZ)


def _rows_out(dm: DomainMatrix) -> List[List[Fraction]]:
    return [[_to_frac(x) for x in row] for row in dm.to_list()]


def rank(rows: Rows, ncols: int) -> int:
    if not rows:
        return 0
    return qmatrix(rows, ncols).rank()


def rref(rows: Rows, ncols: int) -> Tuple[List[List[Fraction]], Tuple[int, ...]]:
    """Reduced row echelon form, zero rows dropped, with pivot columns."""
    if not rows:
        return [], ()
    r, pivots = qmatrix(rows, ncols).rref()
    out = _rows_out(r)[: len(pivots)]
    return out, tuple(pivots)


def nullspace(rows: Rows, ncols: int) -> List[List[Fraction]]:
    """Basis of ``{x : A x = 0}`` as a list of vectors."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = qmatrix(rows, ncols).nullspace()
    if ns.shape[0] == 0:
        return []
    return _rows_out(ns)


def transpose(rows: Rows, nrows_if_empty: int = 0) -> List[List]:
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


def matmul(a: Rows, b: Rows) -> List[List]:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Rows, v: Sequence) -> List:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def inverse(rows: Rows) -> List[List[Fraction]]:
    n = len(rows)
    return _rows_out(qmatrix(rows, n).inv())


def solve(rows: Rows, rhs: Sequence, ncols: int):
    """One solution of ``A x = b`` or ``None`` when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return x


def in_span(v: Sequence, basis: Rows, ncols: int) -> bool:
    if all(x == 0 for x in v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [list(v)], ncols) == rank(basis, ncols)


def primitive(v: Sequence) -> Tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector with
    the same direction."""
    fr = [_to_frac(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in ints)


def lattice_content(v: Sequence[int]) -> int:
    """gcd of the entries of an integer vector (its lattice length)."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def integer_kernel(rows: Rows, ncols: int) -> List[Tuple[int, ...]]:
    """Z-basis of ``{x in Z^ncols : A x = 0}`` for a rational matrix A."""
    rows = [primitive(r) for r in rows if any(x != 0 for x in r)]
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    m = zmatrix(rows, ncols)
    d, _s, t = smith_normal_decomp(m)
    dl = d.to_list()
    r = sum(1 for i in range(min(len(dl), ncols)) if dl[i][i] != 0)
    tl = t.to_list()
    return [tuple(int(tl[i][j]) for i in range(ncols)) for j in range(r, ncols)]


def saturated_basis(vectors: Rows, ncols: int) -> List[Tuple[int, ...]]:
    """Z-basis of ``span_Q(vectors) ∩ Z^ncols``."""
    vectors = [v for v in vectors if any(x != 0 for x in v)]
    if not vectors:
        return []
    comp = nullspace(vectors, ncols)
    return integer_kernel(comp, ncols)


def lattice_basis(vectors: Rows, ncols: int) -> List[Tuple[int, ...]]:
    """Z-basis of the lattice generated by integer vectors."""
    vectors = [list(map(int, v)) for v in vectors if any(x != 0 for x in v)]
    if not vectors:
        return []
    cols = zmatrix(transpose(vectors), len(vectors))
    h = hermite_normal_form(cols).to_list()
    basis = [tuple(int(h[i][j]) for i in range(ncols)) for j in range(len(h[0]) if h else 0)]
    return [b for b in basis if any(b)]


def elementary_divisors(vectors: Rows, ncols: int) -> Tuple[int, ...]:
    """Nonzero invariant factors of the integer matrix with the given rows."""
    vectors = [list(map(int, v)) for v in vectors]
    if not vectors:
        return ()
    f = invariant_factors(zmatrix(vectors, ncols))
    return tuple(abs(int(x)) for x in f if x != 0)


def lattice_index(vectors: Rows, ncols: int) -> int:
    """Index of the lattice generated by ``vectors`` inside its saturation."""
    out = 1
    for x in elementary_divisors(vectors, ncols):
        out *= x
    return out


def coordinates(v: Sequence, basis: Rows, ncols: int):
    """Coefficients of ``v`` in terms of ``basis`` (assumed independent)."""
    return solve(transpose(basis), v, len(basis))
