"""Diagonal norms and filtrations on Q^n, stored in weight coordinates.

A norm is recorded by an orthogonal basis ``b_1..b_n`` and the weights
``w_i = -log ||b_i||``.  For ``v = sum a_i b_i`` its weight is
``min_i (cval(a_i) + w_i)``, where ``cval`` is the field valuation for
field-valued norms and the trivial valuation for filtrations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from ..errors import DimensionMismatch, FieldMismatch, ModeError, SingularMatrix, OutOfRange, ZeroVector
from ..valfield import (
    INF,
    ExtRat,
    FieldSpec,
    Matrix,
    Vector,
    as_matrix,
    as_rat,
    as_vector,
    columns,
    det,
    from_columns,
    identity,
    inverse,
    matvec,
    trivial_val,
    val,
)

NORM = "norm"
FILTRATION = "filtration"
MODES = (NORM, FILTRATION)


@dataclass(frozen=True)
class DiagonalNorm:
    """A norm (``mode="norm"``) or a trivially-valued norm (``mode="filtration"``).

    Parameters
    ----------
    field : FieldSpec
    mode : {"norm", "filtration"}
    basis : tuple of rows
        Square invertible matrix whose columns form an orthogonal basis.
    weights : tuple of Fraction
        ``-log`` of the norm of each basis column.
    """

    field: FieldSpec
    mode: str
    basis: Matrix
    weights: tuple

    def __post_init__(self):
        if self.mode not in MODES:
            raise ModeError(f"unknown mode {self.mode!r}")
        basis = as_matrix(self.basis)
        weights = tuple(as_rat(w) for w in self.weights)
        n = len(basis)
        if n == 0:
            raise DimensionMismatch("zero-dimensional spaces are not supported")
        if any(len(r) != n for r in basis):
            raise DimensionMismatch("basis matrix must be square")
        if len(weights) != n:
            raise DimensionMismatch(f"{n} basis vectors but {len(weights)} weights")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "weights", weights)
        if det(basis) == 0:
            raise SingularMatrix("basis matrix is singular")

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.field, self.mode, self.basis, self.weights))
            self.__dict__["_hash"] = h
        return h

    @classmethod
    def diagonal(cls, field: FieldSpec, weights: Sequence, mode: str = NORM) -> "DiagonalNorm":
        """Norm diagonal in the standard basis."""
        return cls(field, mode, identity(len(weights)), tuple(weights))

    @classmethod
    def from_columns(cls, field: FieldSpec, cols: Sequence[Sequence], weights: Sequence, mode: str = NORM):
        return cls(field, mode, from_columns(cols), tuple(weights))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_filtration(self) -> bool:
        return self.mode == FILTRATION

    @cached_property
    def columns(self) -> tuple:
        return columns(self.basis)

    @cached_property
    def _inverse(self) -> Matrix:
        return inverse(self.basis)

    @cached_property
    def _is_standard(self) -> bool:
        return self.basis == identity(self.dim)

    def coefficient_val(self, a) -> ExtRat:
        if self.mode == FILTRATION:
            return trivial_val(a)
        return val(self.field, a)

    def coordinates(self, v: Sequence) -> Vector:
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in a space of dimension {self.dim}")
        v = as_vector(v)
        return v if self._is_standard else matvec(self._inverse, v)

    def weight(self, v: Sequence) -> ExtRat:
        return eval_weight(self, v)

    def __repr__(self):
        ws = ", ".join(str(w) for w in self.weights)
        return f"DiagonalNorm({self.field}, {self.mode}, dim={self.dim}, weights=({ws}))"


def eval_weight(norm: DiagonalNorm, v: Sequence) -> ExtRat:
    """``-log ||v||``; +inf exactly when ``v`` is zero."""
    a = norm.coordinates(v)
    return min(norm.coefficient_val(ai) + wi for ai, wi in zip(a, norm.weights))


def trivial_norm(field: FieldSpec, n: int, mode: str = FILTRATION) -> DiagonalNorm:
    """All weights zero on the standard basis (the unit norm when ``mode="norm"``)."""
    return DiagonalNorm.diagonal(field, [0] * n, mode)


def with_weights(norm: DiagonalNorm, weights: Sequence, mode: str | None = None) -> DiagonalNorm:
    return DiagonalNorm(norm.field, mode or norm.mode, norm.basis, tuple(weights))


def translate(norm: DiagonalNorm, c) -> DiagonalNorm:
    """``e^c ||.||``: every weight drops by ``c``."""
    c = as_rat(c)
    return with_weights(norm, [w - c for w in norm.weights])


def scale0(norm0: DiagonalNorm, t) -> DiagonalNorm:
    """Scaling action ``||.||_0^t`` on a filtration."""
    if not norm0.is_filtration:
        raise ModeError("scale0 acts on filtrations only")
    t = as_rat(t)
    if t < 0:
        raise OutOfRange(f"scaling factor must be >= 0, got {t}")
    return with_weights(norm0, [t * w for w in norm0.weights])


def det_weight(norm: DiagonalNorm, generator=1) -> Fraction:
    """Weight of ``generator * e_1 ^ ... ^ e_n`` under the determinant norm.

    ``generator`` is the coefficient relative to the wedge of the standard basis.
    """
    g = as_rat(generator)
    if g == 0:
        raise ZeroVector("determinant generator must be nonzero")
    return norm.coefficient_val(g / det(norm.basis)) + sum(norm.weights, Fraction(0))


def orthogonality_defect(basis, norm: DiagonalNorm) -> Fraction:
    """``det_weight(wedge of columns) - sum of column weights``; zero iff orthogonal.

    Always >= 0 (Hadamard inequality in weight form).
    """
    basis = as_matrix(basis)
    if len(basis) != norm.dim:
        raise DimensionMismatch("basis and norm have different dimensions")
    d = det(basis)
    if d == 0:
        raise SingularMatrix("basis matrix is singular")
    return det_weight(norm, d) - sum((eval_weight(norm, c) for c in columns(basis)), Fraction(0))


def is_orthogonal(basis, norm: DiagonalNorm) -> bool:
    return orthogonality_defect(basis, norm) == 0


def check_compatible(a: DiagonalNorm, b: DiagonalNorm) -> None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {b.dim} differ")
    if a.field != b.field:
        raise FieldMismatch(f"fields {a.field} and {b.field} differ")


def require_mode(norm: DiagonalNorm, mode: str, what: str) -> None:
    if norm.mode != mode:
        raise ModeError(f"{what} must be a {mode}, got a {norm.mode}")


__all__ = [
    "DiagonalNorm",
    "FILTRATION",
    "INF",
    "NORM",
    "check_compatible",
    "det_weight",
    "eval_weight",
    "is_orthogonal",
    "orthogonality_defect",
    "require_mode",
    "scale0",
    "translate",
    "trivial_norm",
    "with_weights",
]
