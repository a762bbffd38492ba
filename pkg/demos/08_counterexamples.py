"""
Where the action forgets the filtration
=======================================

Over Q_p, different filtrations can act identically on a norm, and the
weight ratio w(nu0.a, v) - w(a, v) can exceed w(nu0, v).
"""
from ultranorm import FieldSpec
from ultranorm.normspace import DiagonalNorm, eval_weight, gerardin_apply, norms_equal, recover_filtration_weight

F = FieldSpec.padic(2)
a = DiagonalNorm.diagonal(F, [0, 0])
nu0 = DiagonalNorm.diagonal(F, [1, 0], "filtration")
tilted = DiagonalNorm.from_columns(F, [(1, 2), (0, 1)], [1, 0], "filtration")

print("same filtration?   ", norms_equal(nu0, tilted))
print("same action on a?  ", norms_equal(gerardin_apply(nu0, a), gerardin_apply(tilted, a)))

v = (1, 2)
print("w_nu0(v) =", eval_weight(nu0, v), " recovered =", recover_filtration_weight(nu0, a, v))

# the same gap appears over the trivially valued field once a is tilted against nu0
T = FieldSpec.trivial()
a = DiagonalNorm.diagonal(T, [0, -2])
nu0 = DiagonalNorm.from_columns(T, [(1, 1), (0, 1)], [1, 0], "filtration")
print("trivial field: w_nu0(e2) =", eval_weight(nu0, (0, 1)), " recovered =", recover_filtration_weight(nu0, a, (0, 1)))
