"""
Rays from a norm off the monomial apartment
===========================================

Two rays start at a norm alpha that is diagonal in a substituted basis.
Rescaled by the time, their relative spectral measure at degree M moves
towards that of the two directing filtrations.
"""
from ultranorm.graded import Monomial, PLFunction, SectionRing, substitution_table, theorem_b_table

P1 = SectionRing.interval()
nu0 = Monomial(P1, PLFunction.affine([1]), "filtration")
nu0p = Monomial(P1, PLFunction.affine([-1], 1), "filtration")

# the monomial norm pushed forward by x -> x + y, y -> x + 3y
alpha = substitution_table(PLFunction.zero(), [[1, 1], [1, 3]], 16)

print("t    sup-CDF distance at M = 16")
for row in theorem_b_table(nu0, nu0p, alpha, [1, 2, 4, 8, 16, 32], [16]):
    print(f"{str(row.t):4s} {row.distance}")

# inside the apartment the distance is zero at every time
tent = Monomial(P1, PLFunction("min", ((1, 0), (-1, 1))))
print("apartment:", {r.distance for r in theorem_b_table(nu0, nu0p, tent, [1, 4], [8, 16])})
