"""Graded norms on toric section rings as lazy expression trees.

Each node evaluates to a :class:`DiagonalNorm` on the degree-m piece, in the
coordinates of the lattice-point basis of ``m * P``.  Evaluations are memoised
per ``(node, m)``.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..errors import DimensionMismatch, DomainError, FieldMismatch, ModeError, OutOfRange, ParseError, ShapeError
from ..normspace.action import geodesic_eval, gerardin_apply, ray_eval
from ..normspace.metrics import max_norm
from ..normspace.norms import FILTRATION, NORM, DiagonalNorm, scale0, translate
from ..valfield import FieldSpec, as_rat, identity
from .ring import SectionRing

DEFAULT_FIELD = FieldSpec.padic(2)


# --- profiles ---------------------------------------------------------------


@dataclass(frozen=True)
class PLFunction:
    """Piecewise-linear function on the polytope.

    ``kind="interp"``: one-dimensional linear interpolation through
    ``breakpoints`` ``((x, y), ...)``, extended affinely past the ends.
    ``kind="min"``/``"max"``: min or max of affine pieces ``((c_1..c_d, c_0), ...)``
    meaning ``x -> c . x + c_0``.
    """

    kind: str
    data: tuple

    def __post_init__(self):
        if self.kind == "interp":
            pts = tuple((as_rat(x), as_rat(y)) for x, y in self.data)
            if not pts:
                raise ParseError("profile needs at least one breakpoint")
            xs = [x for x, _ in pts]
            if any(b <= a for a, b in zip(xs, xs[1:])):
                raise ParseError("profile breakpoints must be strictly increasing")
            object.__setattr__(self, "data", pts)
        elif self.kind in ("min", "max"):
            pieces = tuple(tuple(as_rat(c) for c in piece) for piece in self.data)
            if not pieces or len({len(p) for p in pieces}) != 1 or len(pieces[0]) < 2:
                raise ParseError("affine pieces must share a length >= 2")
            object.__setattr__(self, "data", pieces)
        else:
            raise ParseError(f"unknown profile kind {self.kind!r}")

    @classmethod
    def affine(cls, coeffs: Sequence, const=0) -> "PLFunction":
        return cls("min", (tuple(coeffs) + (const,),))

    @classmethod
    def zero(cls, d: int = 1) -> "PLFunction":
        return cls.affine([0] * d, 0)

    @property
    def dim(self) -> int | None:
        return 1 if self.kind == "interp" else len(self.data[0]) - 1

    def __call__(self, x) -> Fraction:
        x = tuple(as_rat(c) for c in x)
        if self.kind == "interp":
            return _interp(self.data, x[0])
        vals = (sum((c * xi for c, xi in zip(piece, x)), piece[-1]) for piece in self.data)
        return min(vals) if self.kind == "min" else max(vals)

    def degree_weight(self, u, m: int) -> Fraction:
        """``m * phi(u / m)``."""
        return m * self(tuple(Fraction(c, m) for c in u))


def _interp(pts, x) -> Fraction:
    if len(pts) == 1:
        return pts[0][1]
    if x <= pts[0][0]:
        (x0, y0), (x1, y1) = pts[0], pts[1]
    elif x >= pts[-1][0]:
        (x0, y0), (x1, y1) = pts[-2], pts[-1]
    else:
        i = next(i for i in range(1, len(pts)) if x <= pts[i][0])
        (x0, y0), (x1, y1) = pts[i - 1], pts[i]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


@dataclass(frozen=True)
class ConvexProfile:
    """Convex non-increasing piecewise-linear function on ``[lo, hi]``.

    Between and beyond the breakpoints the function is the affine
    interpolant; evaluating outside ``[lo, hi]`` raises DomainError.
    """

    breakpoints: tuple
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        pts = tuple((as_rat(x), as_rat(y)) for x, y in self.breakpoints)
        lo, hi = as_rat(self.lo), as_rat(self.hi)
        if not pts:
            raise ParseError("profile needs at least one breakpoint")
        if hi < lo:
            raise ParseError("empty profile interval")
        xs = [x for x, _ in pts]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ParseError("breakpoints must be strictly increasing")
        slopes = [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]
        if any(s > 0 for s in slopes):
            raise DomainError("profile must be non-increasing")
        if any(b < a for a, b in zip(slopes, slopes[1:])):
            raise DomainError("profile must be convex")
        object.__setattr__(self, "breakpoints", pts)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def affine(cls, slope, intercept, lo, hi) -> "ConvexProfile":
        """``lambda -> slope * lambda + intercept`` on ``[lo, hi]``."""
        slope, intercept, lo, hi = (as_rat(x) for x in (slope, intercept, lo, hi))
        if lo == hi:
            return cls(((lo, slope * lo + intercept),), lo, hi)
        return cls(((lo, slope * lo + intercept), (hi, slope * hi + intercept)), lo, hi)

    def __call__(self, x) -> Fraction:
        x = as_rat(x)
        if not self.lo <= x <= self.hi:
            raise DomainError(f"{x} lies outside the profile interval [{self.lo}, {self.hi}]")
        return _interp(self.breakpoints, x)


# --- nodes --------------------------------------------------------------------


def _node(cls):
    """Frozen dataclass whose hash is computed once."""
    cls = dataclass(frozen=True)(cls)
    raw = cls.__hash__

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = raw(self)
            self.__dict__["_hash"] = h
        return h

    cls.__hash__ = __hash__
    return cls


class GradedNormExpr:
    """Base class of expression nodes."""

    ring: SectionRing
    mode: str
    field: FieldSpec

    def at(self, m: int) -> DiagonalNorm:
        return eval_degree(self, m)


@_node
class Monomial(GradedNormExpr):
    """Diagonal in the monomial basis with weight ``m * phi(u / m)`` at ``u``."""

    ring: SectionRing
    phi: PLFunction
    mode: str = NORM
    field: FieldSpec = DEFAULT_FIELD

    def __post_init__(self):
        if self.mode not in (NORM, FILTRATION):
            raise ModeError(f"unknown mode {self.mode!r}")
        if self.phi.dim != self.ring.dim:
            raise DimensionMismatch("profile and polytope dimensions differ")


@_node
class Table(GradedNormExpr):
    """Explicit norms ``norms[m - 1]`` for degrees ``1..len(norms)``."""

    ring: SectionRing
    norms: tuple

    def __post_init__(self):
        norms = tuple(self.norms)
        if not norms:
            raise ParseError("table needs at least one degree")
        for m, nm in enumerate(norms, start=1):
            if nm.dim != self.ring.size(m):
                raise DimensionMismatch(f"degree {m}: norm of dimension {nm.dim}, ring piece of {self.ring.size(m)}")
        if len({(nm.mode, nm.field) for nm in norms}) != 1:
            raise ModeError("table entries must share mode and field")
        object.__setattr__(self, "norms", norms)

    @property
    def mode(self) -> str:
        return self.norms[0].mode

    @property
    def field(self) -> FieldSpec:
        return self.norms[0].field

    @property
    def max_degree(self) -> int:
        return len(self.norms)


class _Unary(GradedNormExpr):
    @property
    def ring(self):
        return self.expr.ring

    @property
    def mode(self):
        return self.expr.mode

    @property
    def field(self):
        return self.expr.field


@_node
class Translate(_Unary):
    """``e^{m c}`` times the child in degree ``m``."""

    expr: GradedNormExpr
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", as_rat(self.c))


@_node
class Scale0(_Unary):
    expr: GradedNormExpr
    t: Fraction

    def __post_init__(self):
        t = as_rat(self.t)
        if t < 0:
            raise OutOfRange(f"scaling factor must be >= 0, got {t}")
        if self.expr.mode != FILTRATION:
            raise ModeError("scaling acts on filtrations only")
        object.__setattr__(self, "t", t)


def _same_ring(*exprs):
    rings = {e.ring for e in exprs}
    if len(rings) != 1:
        raise DimensionMismatch("expressions live on different section rings")
    if len({e.field for e in exprs}) != 1:
        raise FieldMismatch("expressions live over different fields")


class _Binary(GradedNormExpr):
    @property
    def ring(self):
        return self.left.ring

    @property
    def field(self):
        return self.left.field


@_node
class Max(_Binary):
    left: GradedNormExpr
    right: GradedNormExpr

    def __post_init__(self):
        _same_ring(self.left, self.right)
        if self.left.mode != self.right.mode:
            raise ModeError("max of two expressions of different modes")

    @property
    def mode(self):
        return self.left.mode


@_node
class Geodesic(_Binary):
    left: GradedNormExpr
    right: GradedNormExpr
    t: Fraction

    def __post_init__(self):
        _same_ring(self.left, self.right)
        if self.left.mode != self.right.mode:
            raise ModeError("geodesic between expressions of different modes")
        t = as_rat(self.t)
        if not 0 <= t <= 1:
            raise OutOfRange(f"geodesic time must lie in [0, 1], got {t}")
        object.__setattr__(self, "t", t)

    @property
    def mode(self):
        return self.left.mode


class _Acting(GradedNormExpr):
    @property
    def ring(self):
        return self.nu0.ring

    @property
    def field(self):
        return self.nu0.field

    @property
    def mode(self):
        return NORM

    def _check(self):
        _same_ring(self.nu0, self.alpha)
        if self.nu0.mode != FILTRATION or self.alpha.mode != NORM:
            raise ModeError("a filtration acts on a norm")


@_node
class Action(_Acting):
    """``nu0 . alpha`` degreewise."""

    nu0: GradedNormExpr
    alpha: GradedNormExpr

    def __post_init__(self):
        self._check()


@_node
class Ray(_Acting):
    """``(t . nu0) . alpha`` degreewise, on a joint basis fixed in ``t``."""

    nu0: GradedNormExpr
    alpha: GradedNormExpr
    t: Fraction

    def __post_init__(self):
        self._check()
        t = as_rat(self.t)
        if t < 0:
            raise OutOfRange(f"ray time must be >= 0, got {t}")
        object.__setattr__(self, "t", t)


@_node
class Iota(GradedNormExpr):
    """Filtration diagonal in ``nu0``'s bases with weights ``-m f(w0 / m)``."""

    f: ConvexProfile
    nu0: GradedNormExpr

    def __post_init__(self):
        if self.nu0.mode != FILTRATION:
            raise ModeError("iota needs a filtration")

    @property
    def ring(self):
        return self.nu0.ring

    @property
    def field(self):
        return self.nu0.field

    @property
    def mode(self):
        return FILTRATION


def iota(f: ConvexProfile, nu0: GradedNormExpr) -> Iota:
    return Iota(f, nu0)


def ell_graded(ray: GradedNormExpr) -> GradedNormExpr:
    """Directing filtration of a ray expression."""
    if not isinstance(ray, Ray):
        raise ShapeError(f"expected a ray expression, got {type(ray).__name__}")
    return ray.nu0


def with_time(ray: Ray, t) -> Ray:
    return dataclasses.replace(ray, t=as_rat(t))


# --- evaluation ---------------------------------------------------------------


@lru_cache(maxsize=65536)
def eval_degree(expr: GradedNormExpr, m: int) -> DiagonalNorm:
    """The degree-m norm of ``expr``."""
    ring = expr.ring
    n = ring.size(m)
    if isinstance(expr, Monomial):
        weights = tuple(expr.phi.degree_weight(u, m) for u in ring.basis(m))
        return DiagonalNorm(expr.field, expr.mode, identity(n), weights)
    if isinstance(expr, Table):
        if m > expr.max_degree:
            raise OutOfRange(f"table defined up to degree {expr.max_degree}, asked for {m}")
        return expr.norms[m - 1]
    if isinstance(expr, Translate):
        return translate(eval_degree(expr.expr, m), expr.c * m)
    if isinstance(expr, Scale0):
        return scale0(eval_degree(expr.expr, m), expr.t)
    if isinstance(expr, Max):
        return max_norm(eval_degree(expr.left, m), eval_degree(expr.right, m))
    if isinstance(expr, Geodesic):
        return geodesic_eval(eval_degree(expr.left, m), eval_degree(expr.right, m), expr.t)
    if isinstance(expr, Action):
        return gerardin_apply(eval_degree(expr.nu0, m), eval_degree(expr.alpha, m))
    if isinstance(expr, Ray):
        return ray_eval(eval_degree(expr.nu0, m), eval_degree(expr.alpha, m), expr.t)
    if isinstance(expr, Iota):
        base = eval_degree(expr.nu0, m)
        weights = tuple(-m * expr.f(w / m) for w in base.weights)
        return DiagonalNorm(base.field, FILTRATION, base.basis, weights)
    raise ShapeError(f"unknown expression node {type(expr).__name__}")




def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_pow(p, k):
    out = [Fraction(1)]
    for _ in range(k):
        out = _poly_mul(out, p)
    return out


def substitution_table(
    phi: PLFunction,
    matrix,
    max_degree: int,
    mode: str = NORM,
    field: FieldSpec = DEFAULT_FIELD,
) -> Table:
    """Pushforward of a monomial norm on the projective line by a linear substitution.

    The lattice point ``k`` of ``m * [0, 1]`` stands for ``x^k y^(m-k)``.  With
    ``matrix = ((a, b), (c, d))`` the degree-m norm is diagonal on the images
    ``(a x + b y)^k (c x + d y)^(m-k)`` with the monomial weights ``m phi(k/m)``.
    Because the substitution is a ring automorphism, submultiplicativity is
    inherited from the monomial norm.
    """
    (a, b), (c, d) = [[as_rat(x) for x in row] for row in matrix]
    if a * d - b * c == 0:
        raise ParseError("substitution matrix must be invertible")
    ring = SectionRing.interval(0, 1)
    # polynomials in x / y, index = power of x
    lx, ly = [b, a], [d, c]
    norms = []
    for m in range(1, max_degree + 1):
        cols = [_poly_mul(_poly_pow(lx, k), _poly_pow(ly, m - k)) for k in range(m + 1)]
        weights = [phi.degree_weight((k,), m) for k in range(m + 1)]
        norms.append(DiagonalNorm.from_columns(field, cols, weights, mode))
    return Table(ring, tuple(norms))


__all__ = [
    "Action",
    "ConvexProfile",
    "DEFAULT_FIELD",
    "GradedNormExpr",
    "Geodesic",
    "Iota",
    "Max",
    "Monomial",
    "PLFunction",
    "Ray",
    "Scale0",
    "Table",
    "Translate",
    "ell_graded",
    "eval_degree",
    "iota",
    "substitution_table",
    "with_time",
]
