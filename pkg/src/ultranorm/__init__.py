"""Exact computations with non-Archimedean norms, filtrations and graded norms
on toric section rings."""
from . import errors, graded, normspace, oracles, valfield
from .errors import UltranormError
from .graded import (
    ConvexProfile,
    Monomial,
    PLFunction,
    SectionRing,
    Table,
    eval_degree,
)
from .normspace import (
    DiagonalNorm,
    JointPresentation,
    SpectralMeasure,
    d_inf,
    dp_distance,
    eval_weight,
    gerardin_apply,
    joint_diagonalize,
    successive_minima,
    volume,
)
from .oracles import exterior_minima_oracle, snf_minima_oracle
from .valfield import FieldSpec

__version__ = "0.1.0"

__all__ = [
    "ConvexProfile",
    "DiagonalNorm",
    "FieldSpec",
    "JointPresentation",
    "Monomial",
    "PLFunction",
    "SectionRing",
    "SpectralMeasure",
    "Table",
    "UltranormError",
    "d_inf",
    "dp_distance",
    "errors",
    "eval_degree",
    "eval_weight",
    "exterior_minima_oracle",
    "gerardin_apply",
    "graded",
    "joint_diagonalize",
    "normspace",
    "oracles",
    "snf_minima_oracle",
    "successive_minima",
    "valfield",
    "volume",
]
