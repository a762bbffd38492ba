"""
Diagonal norms and joint orthogonal bases
==========================================

A norm on Q_p^n is stored as a basis plus one weight per basis vector.
Two norms always share an orthogonal basis; the library finds one and
certifies it.
"""
from fractions import Fraction

from ultranorm import FieldSpec
from ultranorm.normspace import DiagonalNorm, eval_weight, joint_diagonalize, orthogonality_defect

Q2 = FieldSpec.padic(2)

# the unit norm on Q_2^2, and the norm whose unit ball is spanned by e1 and e1 + 2 e2
a = DiagonalNorm.diagonal(Q2, [0, 0])
b = DiagonalNorm.from_columns(Q2, [(1, 0), (1, 2)], [0, 0])

# weights are -log of the norm: bigger weight, smaller vector
print("w_a(2, 4) =", eval_weight(a, (2, 4)))
print("w_b(0, 1) =", eval_weight(b, (0, 1)))

jp = joint_diagonalize(a, b)
print("joint basis columns:", [tuple(str(x) for x in row) for row in zip(*jp.basis)])
print("(w_a, w_b) on it:   ", [(str(u), str(w)) for u, w in jp.pairs])

# a basis is orthogonal exactly when the determinant defect vanishes
print("defects:", orthogonality_defect(jp.basis, a), orthogonality_defect(jp.basis, b))

# a filtration uses the trivial absolute value on coefficients
nu0 = DiagonalNorm.from_columns(Q2, [(1, 0), (1, 1)], [1, 0], "filtration")
print("w_nu0(e1) =", eval_weight(nu0, (1, 0)), " w_nu0(8 e1) =", eval_weight(nu0, (8, 0)))
print("mixed joint basis pairs:", joint_diagonalize(nu0, a).pairs == ((Fraction(1), 0), (0, 0)))
