"""
Graded norms on the projective line
====================================

Degree m sections of O(m) are the monomials x^k y^(m-k), k = 0..m.  The
filtration with weight k on x^k y^(m-k) has an equidistributed limit measure.
"""
from ultranorm.graded import (
    Monomial,
    PLFunction,
    SectionRing,
    check_submultiplicative,
    graded_volume,
    lebesgue_distances,
    limit_measure,
)

P1 = SectionRing.interval()
nu0 = Monomial(P1, PLFunction.affine([1]), "filtration")
trivial = Monomial(P1, PLFunction.zero(), "filtration")

degrees = [1, 2, 4, 8, 16, 32]
measures, table = limit_measure(nu0, trivial, degrees)
for m, d in zip(degrees, lebesgue_distances(measures)):
    print(f"m={m:2d}  sup |F_m - F_Lebesgue| = {d}")

print("vol rows:", [str(v) for v in graded_volume(nu0, trivial, degrees).table.values])

# concave profiles give submultiplicative norms, convex ones do not
tent = Monomial(P1, PLFunction("min", ((1, 0), (-1, 1))))
vee = Monomial(P1, PLFunction("max", ((-1, 0), (1, -1))))
print("tent:", check_submultiplicative(tent, 12).passed)
r = check_submultiplicative(vee, 6)
print("vee: ", r.passed, "worst slack", r.worst_slack, "at (m, n, i, j) =", r.witness)
