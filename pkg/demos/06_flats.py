"""
Convex profiles as a flat in graded norm space
===============================================

iota[f] turns a convex decreasing profile into a filtration.  Acting on a
norm in the same apartment, distances between the results equal L^p
distances between profiles, exactly at each degree.
"""
from fractions import Fraction

from ultranorm.graded import ConvexProfile, Monomial, PLFunction, SectionRing, flat_isometry_check

P1 = SectionRing.interval()
nu0 = Monomial(P1, PLFunction.affine([1]), "filtration")
alpha = Monomial(P1, PLFunction("min", ((1, 0), (-1, 1))))

f = ConvexProfile(((0, 1), (Fraction(1, 2), 0), (1, -Fraction(1, 2))), 0, 1)
g = ConvexProfile.affine(-2, 1, 0, 1)

report = flat_isometry_check(f, g, nu0, alpha, 2, [1, 2, 4, 8, 16])
for r in report.rows:
    print(f"m={r.m:2d}  m^-2 d_2^2 = {r.lhs}  L^2 profile distance^2 = {r.rhs}  equal={r.equal}")
print("estimated limit:", report.table.estimate)
