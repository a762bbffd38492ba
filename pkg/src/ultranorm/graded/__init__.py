"""Graded norms on toric section rings."""
from .analysis import (
    ConvergenceRow,
    ConvergenceTable,
    FlatReport,
    FlatRow,
    StartRow,
    SubmultReport,
    TheoremBRow,
    VolumeTable,
    check_submultiplicative,
    ell_check,
    flat_isometry_check,
    graded_dp,
    graded_volume,
    lebesgue_distances,
    limit_measure,
    ray_start_independence,
    rescaled_measure,
    theorem_b_table,
)
from .expr import (
    Action,
    ConvexProfile,
    DEFAULT_FIELD,
    Geodesic,
    GradedNormExpr,
    Iota,
    Max,
    Monomial,
    PLFunction,
    Ray,
    Scale0,
    Table,
    Translate,
    ell_graded,
    eval_degree,
    iota,
    substitution_table,
    with_time,
)
from .ring import SectionRing, ring_basis
