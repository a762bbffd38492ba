"""Degreewise experiments on graded norms: limits, checks and convergence tables."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..errors import OutOfRange
from ..normspace.action import direction_from_segment
from ..normspace.metrics import (
    SpectralMeasure,
    d_inf,
    dp_from_minima,
    norms_equal,
    parse_p,
    successive_minima,
    sup_cdf_distance,
    sup_cdf_distance_uniform,
    volume,
)
from ..normspace.norms import DiagonalNorm, eval_weight, trivial_norm
from ..valfield import INF, as_rat
from .expr import ConvexProfile, GradedNormExpr, Iota, Ray, Scale0, Action, eval_degree, with_time


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ULTRANORM_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn: Callable, items: Sequence) -> list:
    """``map`` over a thread pool capped by ``ULTRANORM_THREADS``."""
    items = list(items)
    n = min(_threads(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _degrees(degrees) -> list:
    ds = [int(m) for m in degrees]
    if not ds or any(m < 1 for m in ds) or ds != sorted(set(ds)):
        raise OutOfRange("degrees must be positive and strictly increasing")
    return ds


# --- tables -----------------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceRow:
    index: Fraction
    value: Fraction
    diagnostic: Fraction | None


@dataclass(frozen=True)
class ConvergenceTable:
    """Rows ``(index, value, diagnostic)`` sorted by index, plus an extrapolated limit.

    The estimate assumes ``value = L + C / index`` through the last two rows.
    """

    rows: tuple
    estimate: Fraction | None

    @classmethod
    def build(cls, pairs, diagnostics=None) -> "ConvergenceTable":
        pairs = [(as_rat(i), as_rat(v)) for i, v in pairs]
        if diagnostics is None:
            diagnostics = [None] + [v2 - v1 for (_, v1), (_, v2) in zip(pairs, pairs[1:])]
        rows = tuple(ConvergenceRow(i, v, d) for (i, v), d in zip(pairs, diagnostics))
        return cls(rows, richardson(pairs))

    @property
    def values(self) -> list:
        return [r.value for r in self.rows]

    @property
    def indices(self) -> list:
        return [r.index for r in self.rows]


def richardson(pairs) -> Fraction | None:
    if not pairs:
        return None
    if len(pairs) == 1:
        return pairs[0][1]
    (m1, v1), (m2, v2) = pairs[-2], pairs[-1]
    return (m2 * v2 - m1 * v1) / (m2 - m1)


# --- submultiplicativity ------------------------------------------------------


@dataclass
class SubmultReport:
    passed: bool
    worst_slack: Fraction
    witness: tuple | None
    checked_pairs: int
    bound_sup: Fraction
    bounds: list = field(default_factory=list)


def _columns(norm: DiagonalNorm):
    return [tuple(row[j] for row in norm.basis) for j in range(norm.dim)]


def _is_identity(norm: DiagonalNorm) -> bool:
    return all(norm.basis[i][j] == (1 if i == j else 0) for i in range(norm.dim) for j in range(norm.dim))


def check_submultiplicative(expr: GradedNormExpr, M: int) -> SubmultReport:
    """Exact check of ``w_{m+n}(s t) >= w_m(s) + w_n(t)`` for all ``m + n <= M``.

    Testing products of orthogonal basis vectors suffices because the
    coefficient valuation is multiplicative.  ``witness`` is ``(m, n, i, j)``
    for the worst pair (basis indices in degrees ``m`` and ``n``).  The report
    also carries the running sup of ``d_inf(eval(m), trivial) / m``.
    """
    if M < 2:
        raise OutOfRange("M must be >= 2")
    ring = expr.ring
    worst, witness, count = None, None, 0
    for total in range(2, M + 1):
        big = eval_degree(expr, total)
        idx = ring.index(total)
        for m in range(1, total // 2 + 1):
            n = total - m
            a, b = eval_degree(expr, m), eval_degree(expr, n)
            pts_m, pts_n = ring.basis(m), ring.basis(n)
            cols_m, cols_n = _columns(a), _columns(b)
            fast = _is_identity(a) and _is_identity(b) and _is_identity(big)
            for i, x in enumerate(cols_m):
                for j, y in enumerate(cols_n):
                    if fast:
                        u = tuple(p + q for p, q in zip(pts_m[i], pts_n[j]))
                        w = big.weights[idx[u]]
                    else:
                        prod = [Fraction(0)] * len(idx)
                        for s, xs in enumerate(x):
                            if xs:
                                for r, yr in enumerate(y):
                                    if yr:
                                        u = tuple(p + q for p, q in zip(pts_m[s], pts_n[r]))
                                        prod[idx[u]] += xs * yr
                        w = eval_weight(big, prod)
                    slack = w - a.weights[i] - b.weights[j]
                    count += 1
                    if worst is None or slack < worst:
                        worst, witness = slack, (m, n, i, j)
    bounds = []
    for m in range(1, M + 1):
        e = eval_degree(expr, m)
        bounds.append(d_inf(e, trivial_norm(e.field, e.dim, e.mode)) / m)
    return SubmultReport(worst >= 0, worst, witness if worst < 0 else None, count, max(bounds), bounds)


# --- limits -------------------------------------------------------------------


def graded_dp(e: GradedNormExpr, e2: GradedNormExpr, p, degrees) -> ConvergenceTable:
    """Rows ``(m, m^-p d_p(e_m, e2_m)^p)``; for ``p = inf`` rows ``(m, d_inf / m)``."""
    p = parse_p(p)
    ds = _degrees(degrees)

    def row(m):
        raw = dp_from_minima(successive_minima(eval_degree(e, m), eval_degree(e2, m)), p)
        return (m, raw / m if p == INF else raw / Fraction(m) ** p)

    return ConvergenceTable.build(pmap(row, ds))


def rescaled_measure(a: DiagonalNorm, b: DiagonalNorm, s) -> SpectralMeasure:
    return SpectralMeasure(tuple(as_rat(s) * x for x in successive_minima(a, b)))


def limit_measure(e: GradedNormExpr, e2: GradedNormExpr, degrees):
    """Rescaled measures ``(1/m)_* sigma(e_m, e2_m)``.

    The table's value column is the mean (the degree-m volume) and the
    diagnostic is the sup-CDF distance to the previous degree.
    """
    ds = _degrees(degrees)
    measures = pmap(lambda m: rescaled_measure(eval_degree(e, m), eval_degree(e2, m), Fraction(1, m)), ds)
    diags = [None] + [sup_cdf_distance(x, y) for x, y in zip(measures, measures[1:])]
    table = ConvergenceTable.build([(m, mu.mean()) for m, mu in zip(ds, measures)], diags)
    return measures, table


def lebesgue_distances(measures: Sequence[SpectralMeasure], lo=0, hi=1) -> list:
    return [sup_cdf_distance_uniform(mu, lo, hi) for mu in measures]


@dataclass(frozen=True)
class VolumeTable:
    table: ConvergenceTable
    scaling_checks: tuple


def graded_volume(e: GradedNormExpr, e2: GradedNormExpr, degrees) -> VolumeTable:
    """Rows ``(m, vol(e_m, e2_m) / m)``.

    When both operands are Scale0 nodes ``t.nu0`` and ``s.nu0'`` the scaling law
    ``vol(t.nu0, s.nu0') = s vol(nu0, nu0') + (t - s) vol(nu0)`` is checked at
    every degree, with ``vol(nu0) = vol(nu0, trivial)``.
    """
    ds = _degrees(degrees)
    rows = pmap(lambda m: (m, volume(eval_degree(e, m), eval_degree(e2, m)) / m), ds)
    checks = ()
    if isinstance(e, Scale0) and isinstance(e2, Scale0):
        t, s = e.t, e2.t

        def check(m):
            n0, n1 = eval_degree(e.expr, m), eval_degree(e2.expr, m)
            lhs = volume(eval_degree(e, m), eval_degree(e2, m))
            rhs = s * volume(n0, n1) + (t - s) * volume(n0, trivial_norm(n0.field, n0.dim, n0.mode))
            return lhs == rhs

        checks = tuple(pmap(check, ds))
    return VolumeTable(ConvergenceTable.build(rows), checks)


# --- flats ----------------------------------------------------------------------


@dataclass(frozen=True)
class FlatRow:
    m: int
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class FlatReport:
    rows: tuple
    table: ConvergenceTable

    @property
    def all_equal(self) -> bool:
        return all(r.equal for r in self.rows)


def flat_isometry_check(f: ConvexProfile, g: ConvexProfile, nu0: GradedNormExpr, alpha: GradedNormExpr, p, degrees) -> FlatReport:
    """Compare ``m^-p d_p((iota[f] nu0 . alpha)_m, (iota[g] nu0 . alpha)_m)^p``
    with the empirical ``L^p`` distance of ``f`` and ``g`` under the rescaled
    weights of ``nu0_m``.
    """
    p = parse_p(p)
    ds = _degrees(degrees)
    left, right = Action(Iota(f, nu0), alpha), Action(Iota(g, nu0), alpha)

    def row(m):
        raw = dp_from_minima(successive_minima(eval_degree(left, m), eval_degree(right, m)), p)
        xs = [w / m for w in eval_degree(nu0, m).weights]
        diffs = [abs(f(x) - g(x)) for x in xs]
        if p == INF:
            return FlatRow(m, raw / m, max(diffs))
        return FlatRow(m, raw / Fraction(m) ** p, sum((d ** p for d in diffs), Fraction(0)) / len(diffs))

    rows = tuple(pmap(row, ds))
    return FlatReport(rows, ConvergenceTable.build([(r.m, r.rhs) for r in rows]))


# --- rays -----------------------------------------------------------------------


def ell_check(ray: Ray, times, degrees) -> list:
    """``(t, m, ok)``: degreewise slope of the segment ``alpha_m -> ray_t,m`` equals ``nu0_m``."""
    out = []
    for m in _degrees(degrees):
        a = eval_degree(ray.alpha, m)
        target = eval_degree(ray.nu0, m)
        for t in times:
            at_t = eval_degree(with_time(ray, t), m)
            out.append((as_rat(t), m, norms_equal(direction_from_segment(a, at_t, t), target)))
    return out


@dataclass(frozen=True)
class TheoremBRow:
    t: Fraction
    m: int
    distance: Fraction
    clamp: tuple  # (c, value along the ray, reference value)


def theorem_b_table(nu0, nu0p, alpha, times, degrees, c_grid=()) -> list:
    """Sup-CDF distance between ``(1/(tM))_* sigma(ray_t, ray'_t)`` and ``(1/M)_* sigma(nu0, nu0')``.

    Both rays start at ``alpha``.  For each ``c`` in ``c_grid`` the clamped
    means ``integral max(x, c)`` of both measures are reported too.
    """
    times = [as_rat(t) for t in times]
    if not times or any(t <= 0 for t in times) or times != sorted(set(times)):
        raise OutOfRange("times must be positive and strictly increasing")
    ds = _degrees(degrees)
    c_grid = [as_rat(c) for c in c_grid]
    jobs = [(t, m) for m in ds for t in times]

    def row(job):
        t, m = job
        ref = rescaled_measure(eval_degree(nu0, m), eval_degree(nu0p, m), Fraction(1, m))
        r1 = eval_degree(Ray(nu0, alpha, t), m)
        r2 = eval_degree(Ray(nu0p, alpha, t), m)
        mu = rescaled_measure(r1, r2, 1 / (t * m))
        clamp = tuple(
            (c, sum((max(x, c) for x in mu.atoms), Fraction(0)) / mu.size,
             sum((max(x, c) for x in ref.atoms), Fraction(0)) / ref.size)
            for c in c_grid
        )
        return TheoremBRow(t, m, sup_cdf_distance(mu, ref), clamp)

    return pmap(row, jobs)


@dataclass(frozen=True)
class StartRow:
    t: Fraction
    m: int
    value: Fraction
    bound: Fraction

    @property
    def within(self) -> bool:
        return self.value <= self.bound


def ray_start_independence(nu0, alpha, alpha2, p, times, degrees) -> list:
    """``(tM)^-p d_p(ray_t, ray'_t)^p`` at degree ``M`` for rays from ``alpha`` and ``alpha2``.

    The bound column is ``(d_inf(alpha_M, alpha2_M) / (tM))^p`` (``p = inf``:
    the unpowered ratio).
    """
    p = parse_p(p)
    times = [as_rat(t) for t in times]
    if any(t <= 0 for t in times):
        raise OutOfRange("times must be positive")
    jobs = [(t, m) for m in _degrees(degrees) for t in times]

    def row(job):
        t, m = job
        raw = dp_from_minima(successive_minima(eval_degree(Ray(nu0, alpha, t), m), eval_degree(Ray(nu0, alpha2, t), m)), p)
        gap = d_inf(eval_degree(alpha, m), eval_degree(alpha2, m)) / (t * m)
        if p == INF:
            return StartRow(t, m, raw / (t * m), gap)
        return StartRow(t, m, raw / (t * m) ** p, gap ** p)

    return pmap(row, jobs)


__all__ = [
    "ConvergenceRow",
    "ConvergenceTable",
    "FlatReport",
    "FlatRow",
    "StartRow",
    "SubmultReport",
    "TheoremBRow",
    "VolumeTable",
    "check_submultiplicative",
    "ell_check",
    "flat_isometry_check",
    "graded_dp",
    "graded_volume",
    "lebesgue_distances",
    "limit_measure",
    "pmap",
    "ray_start_independence",
    "rescaled_measure",
    "richardson",
    "theorem_b_table",
]
