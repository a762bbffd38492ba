"""Finite-dimensional norms: presentations, metrics, action, geodesics."""
from .action import (
    GeodesicRay,
    GeodesicSegment,
    RayLimitRow,
    direction_from_segment,
    finite_dim_ray_limit_check,
    geodesic,
    geodesic_eval,
    geodesic_ray,
    gerardin_apply,
    ray_eval,
    recover_filtration_weight,
    start_gap,
)
from .joint import JointPresentation, certify, joint_diagonalize, same_valuation
from .metrics import (
    SpectralMeasure,
    d_inf,
    d_one,
    dp_distance,
    dp_from_minima,
    max_norm,
    measure_pushforward,
    norms_equal,
    parse_p,
    root_decimal,
    spectral_measure,
    successive_minima,
    sup_cdf_distance,
    sup_cdf_distance_uniform,
    to_decimal,
    volume,
)
from .norms import (
    FILTRATION,
    NORM,
    DiagonalNorm,
    det_weight,
    eval_weight,
    is_orthogonal,
    orthogonality_defect,
    scale0,
    translate,
    trivial_norm,
    with_weights,
)
