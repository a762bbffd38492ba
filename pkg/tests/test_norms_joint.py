import random
from fractions import Fraction

import pytest

from conftest import Q2, random_family, unit
from ultranorm.errors import DimensionMismatch, FieldMismatch, ModeError, SingularMatrix, ZeroVector
from ultranorm.normspace import (
    DiagonalNorm,
    det_weight,
    eval_weight,
    joint_diagonalize,
    orthogonality_defect,
    scale0,
    translate,
)
from ultranorm.normspace.joint import certify
from ultranorm.oracles import random_instance
from ultranorm.valfield import INF, FieldSpec

B_PAIR = DiagonalNorm.from_columns(Q2, [(1, 0), (1, 2)], [0, 0])
NU0 = DiagonalNorm.from_columns(Q2, [(1, 0), (1, 1)], [1, 0], "filtration")


def test_eval_weight_examples():
    assert eval_weight(unit(), (1, 1)) == 0
    assert eval_weight(unit(), (2, 4)) == 1
    assert eval_weight(NU0, (0, 1)) == 0
    assert eval_weight(unit(), (0, 0)) == INF
    with pytest.raises(DimensionMismatch):
        eval_weight(unit(), (1, 2, 3))


def test_filtration_is_scale_invariant():
    for v in [(3, 5), (1, -7), (4, 2)]:
        assert eval_weight(NU0, v) == eval_weight(NU0, tuple(8 * x for x in v))


def test_translate_and_scale0():
    a = unit()
    assert translate(a, 0) == a
    assert translate(a, 1).weights == (-1, -1)
    assert scale0(NU0, 1) == NU0
    assert scale0(NU0, 3).weights == (3, 0)
    assert scale0(NU0, 0).weights == (0, 0)
    with pytest.raises(ModeError):
        scale0(a, 2)


def test_construction_errors():
    with pytest.raises(SingularMatrix):
        DiagonalNorm(Q2, "norm", ((1, 2), (2, 4)), (0, 0))
    with pytest.raises(DimensionMismatch):
        DiagonalNorm(Q2, "norm", ((1, 0), (0, 1)), (0,))
    with pytest.raises(ModeError):
        DiagonalNorm(Q2, "seminorm", ((1,),), (0,))


def test_det_weight_examples():
    assert det_weight(unit(), 1) == 0
    assert det_weight(B_PAIR, 1) == -1
    with pytest.raises(ZeroVector):
        det_weight(unit(), 0)


def test_orthogonality_defect_examples():
    assert orthogonality_defect(B_PAIR.basis, B_PAIR) == 0
    assert orthogonality_defect(NU0.basis, NU0) == 0
    basis = ((1, 1), (1, -1))  # columns e1+e2, e1-e2
    assert orthogonality_defect(basis, unit()) == 1
    # the max formula on that basis would give e1 = (f1 + f2)/2 weight -1, not 0
    assert eval_weight(unit(), (1, 0)) == 0
    with pytest.raises(SingularMatrix):
        orthogonality_defect(((1, 1), (1, 1)), unit())


def test_joint_examples():
    a = unit()
    jp = joint_diagonalize(a, a)
    assert jp.basis == a.basis and jp.pairs == ((0, 0), (0, 0))
    assert sorted(joint_diagonalize(a, B_PAIR).pairs) == [(0, -1), (0, 0)]
    assert sorted(joint_diagonalize(a, NU0).pairs) == [(0, 0), (0, 1)]


def test_joint_errors():
    with pytest.raises(DimensionMismatch):
        joint_diagonalize(unit(n=2), unit(n=3))
    with pytest.raises(FieldMismatch):
        joint_diagonalize(unit(), unit(FieldSpec.padic(3)))


@pytest.mark.parametrize("modes", [("norm", "norm"), ("norm", "filtration"), ("filtration", "norm"), ("filtration", "filtration")])
def test_joint_certified_random(modes):
    for i in range(60):
        a, b = random_instance(f"jt:{modes}:{i}", 1 + i % 5, (2, 3, 5)[i % 3], 4, modes)
        jp = joint_diagonalize(a, b)
        certify(jp, a, b)
        assert orthogonality_defect(jp.basis, a) == 0 == orthogonality_defect(jp.basis, b)


def test_joint_trivial_field_mixed_modes():
    F = FieldSpec.trivial()
    for i in range(20):
        a, b = random_instance(f"tr:{i}", 3, None, 3, ("norm", "filtration"))
        assert a.field == F
        certify(joint_diagonalize(a, b), a, b)


def test_hadamard_defect_nonnegative():
    rng = random.Random(3)
    for (a,) in (random_family(s, 1, ["norm"]) for s in range(40)):
        n = a.dim
        while True:
            cols = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            try:
                assert orthogonality_defect(tuple(zip(*cols)), a) >= 0
                break
            except SingularMatrix:
                continue


def test_dimension_one():
    a = DiagonalNorm.diagonal(Q2, [Fraction(1, 3)])
    b = DiagonalNorm.from_columns(Q2, [(4,)], [2])
    # b has weight val(1/4) + 2 = 0 on e1
    assert joint_diagonalize(a, b).differences() == (Fraction(1, 3),)
