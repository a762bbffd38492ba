"""
Filtrations acting on norms, and geodesic rays
===============================================

A filtration nu0 acts on a norm a by adding weights on a joint basis.
The ray t -> (t.nu0).a leaves a with slope nu0.
"""
import random

from ultranorm import FieldSpec
from ultranorm.normspace import (
    d_inf,
    direction_from_segment,
    dp_distance,
    finite_dim_ray_limit_check,
    gerardin_apply,
    norms_equal,
    ray_eval,
    volume,
)
from ultranorm.oracles import random_norm

rng = random.Random(1)
F = FieldSpec.padic(3)
nu0, nu0p = (random_norm(rng, F, 3, 4, "filtration") for _ in range(2))
a, ap = (random_norm(rng, F, 3, 4, "norm") for _ in range(2))

x, y = gerardin_apply(nu0, a), gerardin_apply(nu0p, ap)
print("d_1 after the action:", dp_distance(x, y, 1), "<=", dp_distance(nu0, nu0p, 1) + dp_distance(a, ap, 1))
print("d_inf after the action:", d_inf(x, y), "<=", d_inf(nu0, nu0p) + d_inf(a, ap))
print("vol is additive:", volume(x, y) == volume(nu0, nu0p) + volume(a, ap))

# the slope of each ray segment is the directing filtration
for t in (1, 2, 5):
    print(f"t={t}: direction recovered:", norms_equal(direction_from_segment(a, ray_eval(nu0, a, t), t), nu0))

# t^-1 d_1 between two rays tends to d_1 of the directions, within C/t
print("t, scaled d_1, target, bound")
for r in finite_dim_ray_limit_check(nu0, nu0p, a, ap, 1, [1, 2, 4, 8, 16, 32, 64]):
    print(r.t, r.value, r.target, r.bound)
