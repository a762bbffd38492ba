"""Exact scalars over the rationals with a p-adic or trivial valuation,
plus the small amount of exact linear algebra the norm engine needs.

Absolute values are normalised as ``|x| = exp(-val(x))`` so that every
logarithm the library manipulates is an exact rational.  Matrices are
tuples of rows of :class:`fractions.Fraction`; a *basis matrix* holds the
basis vectors as its columns.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, ParseError, SingularMatrix

INF = math.inf

Rat = Fraction
ExtRat = Union[Fraction, float]  # float only ever holds +inf
Vector = tuple
Matrix = tuple


def as_rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"n/d"`` strings to a Fraction.

    Floats are refused: the library never rounds.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ParseError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {x!r}") from exc
    raise ParseError(f"not a rational: {x!r}")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals equipped with either the p-adic or the trivial valuation."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "p-adic":
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise ValueError(f"p-adic field needs a prime p, got {self.p!r}")
        elif self.kind == "trivial":
            if self.p is not None:
                raise ValueError("trivial field takes no prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def padic(cls, p: int) -> "FieldSpec":
        return cls("p-adic", p)

    @classmethod
    def trivial(cls) -> "FieldSpec":
        return cls("trivial")

    @property
    def is_trivial(self) -> bool:
        return self.kind == "trivial"

    def __str__(self):
        return f"Q_{self.p}" if self.kind == "p-adic" else "Q_triv"


def padic_order(n: int, p: int) -> int:
    """Multiplicity of the prime ``p`` in the nonzero integer ``n``."""
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def val(spec: FieldSpec, a) -> ExtRat:
    """Valuation of ``a``: p-adic order, or 0 for the trivial kind; +inf at 0."""
    a = as_rat(a)
    if a == 0:
        return INF
    if spec.kind == "trivial":
        return Fraction(0)
    return Fraction(padic_order(a.numerator, spec.p) - padic_order(a.denominator, spec.p))


def trivial_val(a) -> ExtRat:
    return INF if a == 0 else Fraction(0)


# --- linear algebra -------------------------------------------------------


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(tuple(as_rat(x) for x in row) for row in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("ragged matrix")
    return m


def as_vector(xs: Iterable) -> Vector:
    return tuple(as_rat(x) for x in xs)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    n = len(cols)
    if any(len(c) != n for c in cols):
        raise DimensionMismatch("basis must be square")
    return tuple(tuple(as_rat(cols[j][i]) for j in range(n)) for i in range(n))


def columns(m: Matrix) -> tuple[Vector, ...]:
    if not m:
        return ()
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def transpose(m: Matrix) -> Matrix:
    return columns(m)


def matvec(m: Matrix, x: Sequence) -> Vector:
    if m and len(m[0]) != len(x):
        raise DimensionMismatch(f"matrix has {len(m[0])} columns, vector has {len(x)} entries")
    nz = [(j, b) for j, b in enumerate(x) if b]
    return tuple(sum((row[j] * b for j, b in nz), Fraction(0)) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = columns(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def _eliminate(m: Matrix, rhs: list[list[Fraction]] | None):
    """Gauss-Jordan on a copy of ``m``; returns (det, reduced rhs)."""
    n = len(m)
    a = [list(row) for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0), None
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            if rhs is not None:
                rhs[col], rhs[piv] = rhs[piv], rhs[col]
            det = -det
        pv = a[col][col]
        det *= pv
        inv = 1 / pv
        a[col] = [x * inv for x in a[col]]
        if rhs is not None:
            rhs[col] = [x * inv for x in rhs[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                if rhs is not None:
                    rhs[r] = [x - f * y for x, y in zip(rhs[r], rhs[col])]
    return det, rhs


def det(m: Matrix) -> Fraction:
    """Exact determinant of a square matrix."""
    if any(len(row) != len(m) for row in m):
        raise DimensionMismatch("determinant of a non-square matrix")
    if not m:
        return Fraction(1)
    d, _ = _eliminate(m, None)
    return d


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("inverse of a non-square matrix")
    d, rhs = _eliminate(m, [list(r) for r in identity(n)])
    if d == 0:
        raise SingularMatrix("matrix is singular")
    return tuple(tuple(r) for r in rhs)


def solve(b: Matrix, x: Sequence) -> Vector:
    """Coordinates ``a`` with ``b @ a == x``, i.e. ``x`` in the basis of b's columns."""
    n = len(b)
    if len(x) != n:
        raise DimensionMismatch(f"system of size {n}, right-hand side of size {len(x)}")
    d, rhs = _eliminate(b, [[as_rat(v)] for v in x])
    if d == 0:
        raise SingularMatrix("matrix is singular")
    return tuple(r[0] for r in rhs)


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a small integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = d * v.denominator // math.gcd(d, v.denominator)
    return d
