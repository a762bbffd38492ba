"""Joint orthogonal bases for pairs of diagonal norms.

Two strategies, both followed by an exact certificate:

* same coefficient valuation (norm/norm, filtration/filtration, or any pair
  over the trivially valued field): recursive min-ratio exchange;
* one norm and one filtration over a p-adic field: Gram-Schmidt of the
  filtration's flag against the norm.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import CertificationError
from ..valfield import FieldSpec, Matrix, from_columns, matvec, trivial_val, val
from .norms import (
    FILTRATION,
    DiagonalNorm,
    check_compatible,
    eval_weight,
    is_orthogonal,
    orthogonality_defect,
)


@dataclass(frozen=True)
class JointPresentation:
    """A basis orthogonal for two norms, with both weight lists.

    ``pairs[i] = (u_i, w_i)``: weights of basis column ``i`` under the first
    and the second norm.
    """

    field: FieldSpec
    modes: tuple
    basis: Matrix
    pairs: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def first_weights(self) -> tuple:
        return tuple(u for u, _ in self.pairs)

    @property
    def second_weights(self) -> tuple:
        return tuple(w for _, w in self.pairs)

    def first(self) -> DiagonalNorm:
        return DiagonalNorm(self.field, self.modes[0], self.basis, self.first_weights)

    def second(self) -> DiagonalNorm:
        return DiagonalNorm(self.field, self.modes[1], self.basis, self.second_weights)

    def differences(self) -> tuple:
        """``u_i - w_i`` in basis order."""
        return tuple(u - w for u, w in self.pairs)


def same_valuation(a: DiagonalNorm, b: DiagonalNorm) -> bool:
    """True when both norms use the same coefficient valuation."""
    return a.mode == b.mode or a.field.is_trivial


def _cval_fn(norm: DiagonalNorm):
    if norm.mode == FILTRATION or norm.field.is_trivial:
        return trivial_val
    field = norm.field
    return lambda x: val(field, x)


def _min_ratio(cval, C, alpha, beta):
    """Joint basis in A-coordinates.

    ``C`` holds b's basis vectors as columns in a's coordinates, ``alpha``
    and ``beta`` the two weight lists.  Returns ``[(vector, u, w), ...]``.
    """
    n = len(alpha)
    if n == 0:
        return []

    def wa(col):
        return min(cval(x) + al for x, al in zip(col, alpha))

    cols = [tuple(C[i][j] for i in range(n)) for j in range(n)]
    ratios = [wa(cols[j]) - beta[j] for j in range(n)]
    js = min(range(n), key=lambda j: (ratios[j], j))
    d = cols[js]
    scores = [cval(x) + al for x, al in zip(d, alpha)]
    k = min(range(n), key=lambda i: (scores[i], i))
    u_d = scores[k]

    dk = d[k]
    rows = [i for i in range(n) if i != k]
    keep = [j for j in range(n) if j != js]
    sub = tuple(
        tuple(C[i][j] - d[i] * C[k][j] / dk for j in keep)
        for i in rows
    )
    rest = _min_ratio(
        cval,
        sub,
        tuple(alpha[i] for i in rows),
        tuple(beta[j] for j in keep),
    )
    out = [(d, u_d, beta[js])]
    for vec, u, w in rest:
        out.append((vec[:k] + (Fraction(0),) + vec[k:], u, w))
    return out


def _flag_gram_schmidt(norm: DiagonalNorm, filt: DiagonalNorm):
    """Norm-orthogonal basis adapted to the filtration's flag.

    Returns ``[(vector, norm weight, filtration weight), ...]`` in reference
    coordinates.
    """
    n = norm.dim
    cval = _cval_fn(norm)
    order = sorted(range(n), key=lambda i: -filt.weights[i])
    G = [list(norm.coordinates(filt.columns[i])) for i in order]
    out = []
    for l in range(n):
        col = G[l]
        scores = [cval(x) + al for x, al in zip(col, norm.weights)]
        r = min(range(n), key=lambda i: (scores[i], i))
        piv = col[r]
        for l2 in range(l + 1, n):
            f = G[l2][r] / piv
            if f:
                G[l2] = [x - f * y for x, y in zip(G[l2], col)]
        out.append((matvec(norm.basis, col), scores[r], filt.weights[order[l]]))
    return out


def _presentation_from(a: DiagonalNorm, b: DiagonalNorm, vectors) -> JointPresentation:
    basis = from_columns([v for v, _, _ in vectors])
    pairs = tuple((u, w) for _, u, w in vectors)
    return JointPresentation(a.field, (a.mode, b.mode), basis, pairs)


def certify(jp: JointPresentation, a: DiagonalNorm, b: DiagonalNorm) -> None:
    """Raise CertificationError unless ``jp`` is a valid joint presentation of (a, b)."""
    for norm in (a, b):
        d = orthogonality_defect(jp.basis, norm)
        if d != 0:
            raise CertificationError(f"joint basis has defect {d} for {norm!r}")
    cols = [tuple(row[j] for row in jp.basis) for j in range(jp.dim)]
    for col, (u, w) in zip(cols, jp.pairs):
        if eval_weight(a, col) != u or eval_weight(b, col) != w:
            raise CertificationError("stored weights disagree with evaluation")


def _on_basis(a: DiagonalNorm, b: DiagonalNorm, basis: Matrix) -> JointPresentation:
    cols = [tuple(row[j] for row in basis) for j in range(len(basis))]
    pairs = tuple((eval_weight(a, c), eval_weight(b, c)) for c in cols)
    return JointPresentation(a.field, (a.mode, b.mode), basis, pairs)


@lru_cache(maxsize=8192)
def joint_diagonalize(a: DiagonalNorm, b: DiagonalNorm) -> JointPresentation:
    """A basis orthogonal for both ``a`` and ``b``, certified exactly.

    Any mode combination is accepted.  When one norm's own basis already
    works it is returned unchanged (``b``'s basis is tried first).
    """
    check_compatible(a, b)
    if is_orthogonal(b.basis, a):
        jp = _on_basis(a, b, b.basis)
    elif is_orthogonal(a.basis, b):
        jp = _on_basis(a, b, a.basis)
    elif same_valuation(a, b):
        C = tuple(a.coordinates(col) for col in b.columns)
        C = tuple(tuple(C[j][i] for j in range(a.dim)) for i in range(a.dim))
        found = _min_ratio(_cval_fn(a), C, a.weights, b.weights)
        vectors = [(matvec(a.basis, v), u, w) for v, u, w in found]
        jp = _presentation_from(a, b, vectors)
    elif a.mode == FILTRATION:
        found = _flag_gram_schmidt(b, a)
        jp = _presentation_from(a, b, [(v, fw, nw) for v, nw, fw in found])
    else:
        jp = _presentation_from(a, b, _flag_gram_schmidt(a, b))
    certify(jp, a, b)
    return jp


__all__ = ["JointPresentation", "certify", "joint_diagonalize", "same_valuation"]
