import random
from fractions import Fraction

import pytest

from ultranorm.errors import DimensionMismatch, DomainError, ModeError, OutOfRange, ShapeError
from ultranorm.graded import (
    Action,
    ConvexProfile,
    Geodesic,
    Iota,
    Max,
    Monomial,
    PLFunction,
    Ray,
    Scale0,
    SectionRing,
    Table,
    Translate,
    check_submultiplicative,
    ell_check,
    ell_graded,
    eval_degree,
    flat_isometry_check,
    graded_dp,
    graded_volume,
    lebesgue_distances,
    limit_measure,
    ray_start_independence,
    ring_basis,
    substitution_table,
    theorem_b_table,
)
from ultranorm.normspace import (
    DiagonalNorm,
    d_inf,
    dp_distance,
    eval_weight,
    gerardin_apply,
    measure_pushforward,
    norms_equal,
    scale0,
    spectral_measure,
    trivial_norm,
    volume,
)

P1 = SectionRing.interval()
TRI = SectionRing.simplex(2)
LAM = PLFunction.affine([1])
NU0 = Monomial(P1, LAM, "filtration")
ZERO0 = Monomial(P1, PLFunction.zero(), "filtration")
ALPHA = Monomial(P1, PLFunction("min", ((1, 0), (-1, 1))))


def profile(*pts, lo=0, hi=1):
    return ConvexProfile(tuple(pts), lo, hi)


def random_profile(rng, lo=0, hi=1):
    """Random convex non-increasing profile through a few breakpoints."""
    k = rng.randint(1, 3)
    xs = sorted({Fraction(rng.randint(1, 7), 8) for _ in range(k)})
    xs = [Fraction(lo)] + [x * (hi - lo) + lo for x in xs] + [Fraction(hi)]
    slopes = sorted(Fraction(-rng.randint(0, 12), rng.randint(1, 3)) for _ in range(len(xs) - 1))
    y = Fraction(rng.randint(-4, 4), 2)
    pts = [(xs[0], y)]
    for x0, x1, s in zip(xs, xs[1:], slopes):
        y += s * (x1 - x0)
        pts.append((x1, y))
    return ConvexProfile(tuple(pts), lo, hi)


# --- rings and evaluation -----------------------------------------------------


def test_ring_basis_examples():
    assert ring_basis(P1, 3) == ((0,), (1,), (2,), (3,))
    assert TRI.size(2) == 6
    assert ring_basis(SectionRing.interval(0, 2), 2) == tuple((k,) for k in range(5))
    assert TRI.contains((1, 1), 2) and not TRI.contains((2, 1), 2)
    with pytest.raises(OutOfRange):
        ring_basis(P1, 0)
    with pytest.raises(DimensionMismatch):
        SectionRing(((0, 0), (1, 1)))


def test_ring_multiplication_closed():
    square = SectionRing(((0, 0), (1, 0), (0, 1), (1, 1)))
    for ring in (P1, TRI, square):
        for m in (1, 2, 3):
            for n in (1, 2):
                for u in ring.basis(m):
                    for v in ring.basis(n):
                        assert ring.contains(tuple(x + y for x, y in zip(u, v)), m + n)


def test_eval_degree_examples():
    for m in (1, 4, 7):
        assert norms_equal(eval_degree(ZERO0, m), trivial_norm(NU0.field, m + 1))
        assert eval_degree(NU0, m).weights == tuple(range(m + 1))
        shifted = eval_degree(Translate(ALPHA, Fraction(1, 3)), m)
        assert shifted.weights == tuple(w - Fraction(m, 3) for w in eval_degree(ALPHA, m).weights)
        ray = eval_degree(Ray(NU0, ALPHA, 3), m)
        assert norms_equal(ray, gerardin_apply(scale0(eval_degree(NU0, m), 3), eval_degree(ALPHA, m)))


def test_expression_errors():
    with pytest.raises(ModeError):
        Iota(profile((0, 0)), ALPHA)
    with pytest.raises(ModeError):
        Action(ALPHA, ALPHA)
    with pytest.raises(ShapeError):
        ell_graded(NU0)
    with pytest.raises(DimensionMismatch):
        Monomial(TRI, LAM)
    with pytest.raises(DomainError):
        profile((0, 0), (1, 1))
    with pytest.raises(DomainError):
        profile((0, 0), (Fraction(1, 2), -1), (1, -3))
    with pytest.raises(DomainError):
        eval_degree(Iota(profile((0, 0), (Fraction(1, 2), 0), hi=Fraction(1, 2)), NU0), 2)
    table = substitution_table(PLFunction.zero(), [[1, 1], [0, 1]], 3)
    with pytest.raises(OutOfRange):
        eval_degree(table, 4)


# --- submultiplicativity --------------------------------------------------------------


@pytest.mark.parametrize("phi", [
    LAM,
    PLFunction("min", ((1, 0), (-1, 1))),
    PLFunction("min", ((2, 0), (Fraction(1, 2), Fraction(1, 2)), (-1, 1))),
])
def test_concave_monomials_pass(phi):
    report = check_submultiplicative(Monomial(P1, phi), 24)
    assert report.passed and report.worst_slack == 0 and report.witness is None


def test_concave_on_simplex_passes():
    phi = PLFunction("min", ((1, 0, 0), (0, 1, 0), (-1, -1, 1)))
    report = check_submultiplicative(Monomial(TRI, phi), 8)
    assert report.passed and report.worst_slack == 0


def test_convex_violator_rejected():
    bad = Monomial(P1, PLFunction("max", ((-1, 0), (1, -1))))
    report = check_submultiplicative(bad, 6)
    assert not report.passed
    assert report.worst_slack == -3
    assert report.witness == (3, 3, 0, 3)
    m, n, i, j = report.witness
    lhs = eval_degree(bad, m + n).weights[i + j]
    assert lhs - eval_degree(bad, m).weights[i] - eval_degree(bad, n).weights[j] == -3


def test_substitution_tables_submultiplicative():
    table = substitution_table(LAM, [[1, 1], [1, 3]], 8)
    assert check_submultiplicative(table, 8).passed


def test_strong_dinf_coherence():
    # weights within m*eps of a submultiplicative monomial norm
    eps = Fraction(1, 5)
    rng = random.Random(3)
    M = 10
    norms = []
    for m in range(1, M + 1):
        base = eval_degree(ALPHA, m)
        w = tuple(x + m * eps * Fraction(rng.randint(-4, 4), 4) for x in base.weights)
        norms.append(DiagonalNorm(base.field, base.mode, base.basis, w))
    pert = Table(P1, tuple(norms))
    for m in range(1, M // 2 + 1):
        assert d_inf(eval_degree(pert, m), eval_degree(ALPHA, m)) <= m * eps
    for m in range(1, M):
        for n in range(1, M - m + 1):
            wm, wn, wmn = (eval_degree(pert, k).weights for k in (m, n, m + n))
            for i in range(m + 1):
                for j in range(n + 1):
                    assert wmn[i + j] - wm[i] - wn[j] >= -3 * (m + n) * eps


# --- projective line anchors -------------------------------------------------------


DEGREES = list(range(1, 33))


def test_p1_volume_anchor():
    vt = graded_volume(NU0, ZERO0, DEGREES)
    assert all(v == Fraction(1, 2) for v in vt.table.values)
    assert vt.table.estimate == Fraction(1, 2)
    assert all(v == 0 for v in graded_volume(NU0, NU0, [1, 2, 3]).table.values)


def test_p1_limit_measure():
    measures, table = limit_measure(NU0, ZERO0, DEGREES)
    for m, mu, dist in zip(DEGREES, measures, lebesgue_distances(measures)):
        assert mu.atoms == tuple(Fraction(k, m) for k in range(m, -1, -1))
        assert mu.mass == Fraction(1, m + 1)
        assert dist <= Fraction(1, m + 1)
    same, _ = limit_measure(NU0, NU0, [1, 2])
    assert all(set(mu.atoms) == {0} for mu in same)


def test_p1_graded_dp():
    assert graded_dp(NU0, ZERO0, 1, DEGREES).values == [Fraction(1, 2)] * 32
    c = Fraction(-3, 4)
    for p in (1, 2, 3, "inf"):
        want = abs(c) if p == "inf" else abs(c) ** p
        assert graded_dp(ALPHA, Translate(ALPHA, c), p, DEGREES).values == [want] * 32
        assert graded_dp(ALPHA, ALPHA, p, [1, 5]).values == [0, 0]


def test_graded_pushforward_identities():
    c = Fraction(1, 3)
    other = Max(Translate(ALPHA, Fraction(1, 2)), Monomial(P1, LAM))
    clamped = Max(other, Translate(ALPHA, c))
    for m in (2, 5, 9):
        a, b = eval_degree(ALPHA, m), eval_degree(other, m)
        sab = spectral_measure(a, b)
        assert measure_pushforward(sab, "clamp", c * m) == spectral_measure(a, eval_degree(clamped, m))
        assert measure_pushforward(sab, "negate") == spectral_measure(b, a)


def test_graded_volume_scaling_law():
    nu0p = Monomial(P1, PLFunction("max", ((2, -1), (0, 0))), "filtration")
    for t, s in [(2, 1), (Fraction(1, 2), 3), (1, 1)]:
        vt = graded_volume(Scale0(NU0, t), Scale0(nu0p, s), [1, 2, 3, 6])
        assert vt.scaling_checks == (True,) * 4


# --- iota and flats ----------------------------------------------------------------


def test_iota_anchors():
    zero = profile((0, 0))
    minus = ConvexProfile.affine(-1, 0, 0, 1)
    for m in (1, 3, 8):
        assert norms_equal(eval_degree(Iota(zero, NU0), m), trivial_norm(NU0.field, m + 1))
        assert norms_equal(eval_degree(Iota(minus, NU0), m), eval_degree(NU0, m))
        for t in (Fraction(1, 2), 3):
            f = ConvexProfile.affine(-t, 0, 0, 1)
            assert norms_equal(eval_degree(Iota(f, NU0), m), eval_degree(Scale0(NU0, t), m))
        c = Fraction(2, 3)
        f = ConvexProfile.affine(-1, c, 0, 1)
        assert norms_equal(eval_degree(Iota(f, NU0), m), eval_degree(Translate(NU0, c), m))
    half = eval_degree(Iota(ConvexProfile.affine(Fraction(-1, 2), 0, 0, 1), NU0), 4)
    assert half.weights == tuple(Fraction(k, 2) for k in range(5))


def test_flat_examples():
    zero, minus = profile((0, 0)), ConvexProfile.affine(-1, 0, 0, 1)
    minus2 = ConvexProfile.affine(-2, 0, 0, 1)
    same = flat_isometry_check(minus, minus, NU0, ALPHA, 2, [1, 2, 3])
    assert [r.lhs for r in same.rows] == [0, 0, 0]
    for f, g in [(zero, minus), (minus, minus2)]:
        rep = flat_isometry_check(f, g, NU0, ALPHA, 1, DEGREES)
        assert rep.all_equal and {r.lhs for r in rep.rows} == {Fraction(1, 2)}


@pytest.mark.parametrize("seed", range(4))
def test_flat_isometry_random_p1(seed):
    rng = random.Random(seed)
    f, g = random_profile(rng), random_profile(rng)
    for p in (1, 2, "inf"):
        assert flat_isometry_check(f, g, NU0, ALPHA, p, range(1, 17)).all_equal


def test_flat_isometry_simplex():
    rng = random.Random(5)
    nu0 = Monomial(TRI, PLFunction.affine([1, 2]), "filtration")
    alpha = Monomial(TRI, PLFunction("min", ((1, 0, 0), (0, 1, 0), (-1, -1, 1))))
    f, g = random_profile(rng, 0, 2), random_profile(rng, 0, 2)
    assert flat_isometry_check(f, g, nu0, alpha, 2, range(1, 7)).all_equal


# --- rays and theorem B --------------------------------------------------------------


def test_ell():
    ray = Ray(NU0, ALPHA, 1)
    assert ell_graded(ray) == NU0
    assert ell_graded(Ray(ZERO0, ALPHA, 2)) == ZERO0
    assert all(ok for _, _, ok in ell_check(ray, [1, 2, 5], range(1, 9)))
    table = substitution_table(PLFunction.zero(), [[1, 1], [1, 3]], 6)
    assert all(ok for _, _, ok in ell_check(Ray(NU0, table, 1), [1, 2, 5], range(1, 7)))


def test_graded_action_contractive():
    table = substitution_table(LAM, [[1, 1], [1, 3]], 6)
    nu0p = Monomial(P1, PLFunction.affine([-1], 1), "filtration")
    for m in range(1, 7):
        x = eval_degree(Action(NU0, ALPHA), m)
        y = eval_degree(Action(nu0p, table), m)
        n0, n1, a, b = (eval_degree(e, m) for e in (NU0, nu0p, ALPHA, table))
        assert d_inf(x, y) <= d_inf(n0, n1) + d_inf(a, b)
        assert dp_distance(x, y, 1) <= dp_distance(n0, n1, 1) + dp_distance(a, b, 1)
        assert volume(x, y) == volume(n0, n1) + volume(a, b)


def test_action_respects_equivalence():
    # bounded perturbations are d_p-equivalent; so are their actions
    rng = random.Random(8)

    def bump(expr, M):
        out = []
        for m in range(1, M + 1):
            e = eval_degree(expr, m)
            w = tuple(x + Fraction(rng.randint(0, 4), 4) for x in e.weights)
            out.append(DiagonalNorm(e.field, e.mode, e.basis, w))
        return Table(P1, tuple(out))

    M = 24
    nu0p, alphap = bump(NU0, M), bump(ALPHA, M)
    degrees = [3, 6, 12, 24]
    rows = graded_dp(Action(NU0, ALPHA), Action(nu0p, alphap), 1, degrees).values
    assert all(v <= Fraction(2, m) for v, m in zip(rows, degrees))


def test_theorem_b_apartment_zero():
    nu0p = Monomial(P1, PLFunction("max", ((2, -1), (0, 0))), "filtration")
    rows = theorem_b_table(NU0, nu0p, ALPHA, [1, 2, 4], [4, 8], c_grid=[0, Fraction(1, 2)])
    assert all(r.distance == 0 for r in rows)
    assert all(v == ref for r in rows for _, v, ref in r.clamp)
    assert all(r.distance == 0 for r in theorem_b_table(NU0, NU0, ALPHA, [1, 3], [5]))


def test_theorem_b_transverse():
    nu0p = Monomial(P1, PLFunction.affine([-1], 1), "filtration")
    alpha = substitution_table(PLFunction.zero(), [[1, 1], [1, 3]], 16)
    rows = theorem_b_table(NU0, nu0p, alpha, [1, 2, 4, 8, 16, 32], [16])
    dists = [r.distance for r in rows]
    assert dists == [Fraction(k, 17) for k in (8, 4, 2, 1, 1, 1)]


def test_ray_start_independence():
    c = Fraction(3, 2)
    for p in (1, 2, "inf"):
        for r in ray_start_independence(NU0, ALPHA, Translate(ALPHA, c), p, [1, 2, 4], [2, 5]):
            want = c / r.t if p == "inf" else (c / r.t) ** p
            assert r.value == want and r.within
    table = substitution_table(PLFunction.zero(), [[1, 1], [1, 3]], 8)
    rows = ray_start_independence(NU0, ALPHA, table, 2, [1, 2, 4, 8], [4, 8])
    assert all(r.within for r in rows)
    assert all(r.value == 0 for r in ray_start_independence(NU0, ALPHA, ALPHA, 1, [1, 2], [3]))


def test_graded_maximum_principle():
    upper = Max(ALPHA, Monomial(P1, LAM))
    for m in (2, 5):
        for t in (Fraction(1, 4), Fraction(3, 4)):
            lo = eval_degree(Geodesic(ALPHA, Translate(ALPHA, 1), t), m)
            hi = eval_degree(Geodesic(upper, Max(Translate(ALPHA, 1), upper), t), m)
            for v in [(1,) * (m + 1), tuple(range(m + 1))]:
                assert eval_weight(lo, v) >= eval_weight(hi, v)
