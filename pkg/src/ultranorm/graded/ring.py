"""Toric section rings: degree-m pieces spanned by the lattice points of m*P."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from ..errors import DimensionMismatch, OutOfRange, ParseError
from ..valfield import int_det


def _affine_rank(points) -> int:
    base = points[0]
    rows = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    rank = 0
    rows = [list(map(int, r)) for r in rows]
    ncols = len(base)
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                a, b = rows[rank][c], rows[i][c]
                rows[i] = [a * x - b * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _cofactor_normal(vectors):
    """Integer normal to ``d - 1`` vectors in Z^d, reduced by its content."""
    d = len(vectors) + 1
    normal = []
    for i in range(d):
        minor = [[v[j] for j in range(d) if j != i] for v in vectors]
        normal.append((-1) ** i * int_det(minor))
    g = 0
    for x in normal:
        g = math.gcd(g, x)
    if g == 0:
        return None
    return tuple(x // g for x in normal)


@dataclass(frozen=True)
class SectionRing:
    """Section ring of the polarised toric variety of a full-dimensional lattice polytope.

    The degree-m piece has the lattice points of ``m * P`` as a basis, in
    lexicographic order; multiplying basis monomials adds lattice points.
    """

    vertices: tuple

    def __post_init__(self):
        try:
            verts = tuple(sorted(set(tuple(int(x) for x in v) for v in self.vertices)))
        except (TypeError, ValueError) as exc:
            raise ParseError("polytope vertices must be integer tuples") from exc
        if not verts:
            raise ParseError("polytope needs at least one vertex")
        d = len(verts[0])
        if d == 0 or any(len(v) != d for v in verts):
            raise DimensionMismatch("vertices must share a positive dimension")
        if _affine_rank(verts) != d:
            raise DimensionMismatch("polytope must be full-dimensional")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def interval(cls, lo: int = 0, hi: int = 1) -> "SectionRing":
        """``[lo, hi]``; ``[0, 1]`` is the projective line with O(1)."""
        return cls(((lo,), (hi,)))

    @classmethod
    def simplex(cls, d: int) -> "SectionRing":
        verts = [tuple(0 for _ in range(d))]
        verts += [tuple(int(i == j) for j in range(d)) for i in range(d)]
        return cls(tuple(verts))

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @cached_property
    def halfspaces(self) -> tuple:
        """Facet inequalities ``n . x <= b`` with primitive integer normals."""
        d = self.dim
        verts = self.vertices
        if d == 1:
            lo, hi = verts[0][0], verts[-1][0]
            return (((1,), hi), ((-1,), -lo))
        found = set()
        for subset in itertools.combinations(verts, d):
            base = subset[0]
            vecs = [[x - y for x, y in zip(v, base)] for v in subset[1:]]
            n = _cofactor_normal(vecs)
            if n is None:
                continue
            b = sum(x * y for x, y in zip(n, base))
            vals = [sum(x * y for x, y in zip(n, v)) for v in verts]
            if all(v <= b for v in vals):
                found.add((n, b))
            elif all(v >= b for v in vals):
                found.add((tuple(-x for x in n), -b))
        return tuple(sorted(found))

    def contains(self, point, m: int = 1) -> bool:
        return all(sum(x * y for x, y in zip(n, point)) <= m * b for n, b in self.halfspaces)

    def basis(self, m: int) -> tuple:
        return _lattice_points(self, m)

    def size(self, m: int) -> int:
        return len(_lattice_points(self, m))

    def index(self, m: int) -> dict:
        return _point_index(self, m)

    def to_json(self) -> dict:
        return {"polytope": {"vertices": [list(v) for v in self.vertices]}}


_POINTS: dict = {}
_INDEX: dict = {}


def _lattice_points(ring: SectionRing, m: int) -> tuple:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise OutOfRange(f"degree must be a positive integer, got {m!r}")
    key = (ring, m)
    pts = _POINTS.get(key)
    if pts is None:
        d = ring.dim
        lows = [m * min(v[i] for v in ring.vertices) for i in range(d)]
        highs = [m * max(v[i] for v in ring.vertices) for i in range(d)]
        box = itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs)))
        pts = tuple(p for p in box if ring.contains(p, m))
        _POINTS[key] = pts
    return pts


def _point_index(ring: SectionRing, m: int) -> dict:
    key = (ring, m)
    idx = _INDEX.get(key)
    if idx is None:
        idx = {p: i for i, p in enumerate(_lattice_points(ring, m))}
        _INDEX[key] = idx
    return idx


def ring_basis(ring: SectionRing, m: int) -> tuple:
    """Lattice points of ``m * P`` in lexicographic order."""
    return ring.basis(m)


__all__ = ["SectionRing", "ring_basis"]
