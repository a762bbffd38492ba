"""Filtrations acting on norms, geodesic segments and geodesic rays."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from ..errors import ModeError, OutOfRange, ZeroVector
from ..valfield import INF, FieldSpec, as_rat, as_vector
from .joint import JointPresentation, joint_diagonalize
from .metrics import d_inf, dp_distance, parse_p
from .norms import FILTRATION, NORM, DiagonalNorm, check_compatible, eval_weight, require_mode


def gerardin_apply(nu0: DiagonalNorm, a: DiagonalNorm) -> DiagonalNorm:
    """``nu0 . a``: weights add on a basis orthogonal for both."""
    check_compatible(nu0, a)
    require_mode(nu0, FILTRATION, "the acting argument")
    require_mode(a, NORM, "the acted-on argument")
    jp = joint_diagonalize(nu0, a)
    return DiagonalNorm(a.field, NORM, jp.basis, tuple(w0 + u for w0, u in jp.pairs))


def recover_filtration_weight(nu0: DiagonalNorm, a: DiagonalNorm, v: Sequence) -> Fraction:
    """``w(nu0 . a, v) - w(a, v)``.

    Always at least ``w(nu0, v)``, with equality on a joint orthogonal basis
    of ``(nu0, a)``.  Off such a basis it can be strictly larger, over either
    kind of field (see ``tests/test_counterexamples.py``).
    """
    v = as_vector(v)
    if all(x == 0 for x in v):
        raise ZeroVector("cannot recover a weight at the zero vector")
    return eval_weight(gerardin_apply(nu0, a), v) - eval_weight(a, v)


@dataclass(frozen=True)
class GeodesicSegment:
    """Straight segment between two norms of the same mode on a joint basis."""

    joint: JointPresentation

    def at(self, t) -> DiagonalNorm:
        t = as_rat(t)
        if not 0 <= t <= 1:
            raise OutOfRange(f"geodesic time must lie in [0, 1], got {t}")
        jp = self.joint
        weights = tuple((1 - t) * u + t * w for u, w in jp.pairs)
        return DiagonalNorm(jp.field, jp.modes[0], jp.basis, weights)


def geodesic(a: DiagonalNorm, b: DiagonalNorm) -> GeodesicSegment:
    check_compatible(a, b)
    if a.mode != b.mode:
        raise ModeError("geodesics join two norms of the same mode")
    return GeodesicSegment(joint_diagonalize(a, b))


def geodesic_eval(a: DiagonalNorm, b: DiagonalNorm, t) -> DiagonalNorm:
    return geodesic(a, b).at(t)


@dataclass(frozen=True)
class GeodesicRay:
    """``t -> (t.nu0).a`` stored on a fixed joint basis.

    ``joint.pairs[i] = (w0_i, u_i)`` with ``w0`` the filtration weights.
    """

    joint: JointPresentation

    @property
    def field(self) -> FieldSpec:
        return self.joint.field

    def at(self, t) -> DiagonalNorm:
        t = as_rat(t)
        if t < 0:
            raise OutOfRange(f"ray time must be >= 0, got {t}")
        jp = self.joint
        return DiagonalNorm(jp.field, NORM, jp.basis, tuple(u + t * w0 for w0, u in jp.pairs))

    def start(self) -> DiagonalNorm:
        return self.at(0)

    def direction(self) -> DiagonalNorm:
        """The directing filtration, read off the stored presentation."""
        return self.joint.first()


def geodesic_ray(nu0: DiagonalNorm, a: DiagonalNorm) -> GeodesicRay:
    check_compatible(nu0, a)
    require_mode(nu0, FILTRATION, "the ray direction")
    require_mode(a, NORM, "the ray start")
    return GeodesicRay(joint_diagonalize(nu0, a))


def ray_eval(nu0: DiagonalNorm, a: DiagonalNorm, t) -> DiagonalNorm:
    return geodesic_ray(nu0, a).at(t)


def direction_from_segment(a: DiagonalNorm, at_t: DiagonalNorm, t) -> DiagonalNorm:
    """Filtration with weights ``(w_t - w_0)/t`` on a joint basis of ``(a, at_t)``.

    The answer depends on the joint basis found when the field is p-adic;
    when ``at_t`` is presented on a basis orthogonal for ``a`` (as
    :func:`ray_eval` returns it) that basis is used.
    """
    t = as_rat(t)
    if t <= 0:
        raise OutOfRange(f"t must be > 0, got {t}")
    check_compatible(a, at_t)
    require_mode(a, NORM, "the segment start")
    require_mode(at_t, NORM, "the segment end")
    jp = joint_diagonalize(a, at_t)
    return DiagonalNorm(a.field, FILTRATION, jp.basis, tuple((w - u) / t for u, w in jp.pairs))


def start_gap(nu0: DiagonalNorm, nu0p: DiagonalNorm, a: DiagonalNorm) -> Fraction:
    """``2 d_inf(a, b)`` where ``b`` is ``a`` re-diagonalised on a joint basis of (nu0, nu0p).

    ``b`` is the norm diagonal on that joint basis ``K`` with weights ``w(a, K_i)``,
    so the rays from ``b`` directed by ``nu0`` and ``nu0p`` stay in one apartment.
    """
    K = joint_diagonalize(nu0, nu0p).basis
    cols = [tuple(row[j] for row in K) for j in range(len(K))]
    b = DiagonalNorm(a.field, NORM, K, tuple(eval_weight(a, c) for c in cols))
    return 2 * d_inf(a, b)


@dataclass(frozen=True)
class RayLimitRow:
    t: Fraction
    value: Fraction
    target: Fraction
    bound: Fraction
    within: bool


def _root(x: Fraction, p: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = 40
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return d if p == 1 or d == 0 else (d.ln() / p).exp()


def finite_dim_ray_limit_check(nu0, nu0p, a, ap, p, times) -> list:
    """Compare ``t^-1 d_p(ray_t, ray'_t)`` with ``d_p(nu0, nu0p)``.

    For finite ``p`` the ``value`` and ``target`` columns hold p-th powers;
    the bound ``(d_inf(a, a') + start_gap)/t`` applies to the roots and is
    checked exactly for ``p`` in ``{1, inf}``, otherwise at 40 digits.
    """
    p = parse_p(p)
    times = [as_rat(t) for t in times]
    if any(t <= 0 for t in times) or times != sorted(set(times)):
        raise OutOfRange("times must be positive and strictly increasing")
    target = dp_distance(nu0, nu0p, p)
    const = d_inf(a, ap) + start_gap(nu0, nu0p, a)
    r1, r2 = geodesic_ray(nu0, a), geodesic_ray(nu0p, ap)
    rows = []
    for t in times:
        raw = dp_distance(r1.at(t), r2.at(t), p)
        value = raw / t if p == INF else raw / t ** p
        bound = const / t
        if p in (1, INF):
            within = abs(value - target) <= bound
        else:
            with localcontext() as ctx:
                ctx.prec = 40
                gap = abs(_root(value, p) - _root(target, p))
                within = gap <= Decimal(bound.numerator) / Decimal(bound.denominator) + Decimal("1e-30")
        rows.append(RayLimitRow(t, value, target, bound, within))
    return rows


__all__ = [
    "GeodesicRay",
    "GeodesicSegment",
    "RayLimitRow",
    "direction_from_segment",
    "finite_dim_ray_limit_check",
    "geodesic",
    "geodesic_eval",
    "geodesic_ray",
    "gerardin_apply",
    "ray_eval",
    "recover_filtration_weight",
    "start_gap",
]
