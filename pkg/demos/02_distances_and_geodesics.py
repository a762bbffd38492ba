"""
Successive minima, d_p distances and geodesics
===============================================
"""
from fractions import Fraction

from ultranorm import FieldSpec
from ultranorm.normspace import (
    DiagonalNorm,
    d_inf,
    dp_distance,
    geodesic_eval,
    max_norm,
    root_decimal,
    spectral_measure,
    successive_minima,
    volume,
)
from ultranorm.oracles import random_instance

Q2 = FieldSpec.padic(2)
a = DiagonalNorm.diagonal(Q2, [0, 0])
b = DiagonalNorm.from_columns(Q2, [(1, 0), (1, 2)], [0, 0])

print("lambda(a, b) =", [str(x) for x in successive_minima(a, b)])
print("sigma(a, b) has mass", spectral_measure(a, b).mass, "on each minimum")
print("d_1 =", dp_distance(a, b, 1), " d_inf =", d_inf(a, b), " vol =", volume(a, b))

# d_2 is reported as its square; the root is a decimal string
d2sq = dp_distance(a, b, 2)
print("d_2^2 =", d2sq, " d_2 ~", root_decimal(d2sq, 2))

# d_1 splits through the pointwise max
m = max_norm(a, b)
print("vol(a, a v b) + vol(b, a v b) =", volume(a, m) + volume(b, m))

# along a geodesic every d_p is affine in time
x, y = random_instance("demo", 4, 3)
for t in (Fraction(1, 4), Fraction(1, 2), 1):
    g = geodesic_eval(x, y, t)
    print(f"t={t}: d_1(x, g_t) = {dp_distance(x, g, 1)}  (t * d_1(x, y) = {t * dp_distance(x, y, 1)})")
