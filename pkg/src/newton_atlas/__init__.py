"""Newton maps of rational functions: construction, fixed-point analysis,
conjugacy classification, Julia-set topology prediction, and basin rendering."""

from .conjugacy import (
    CubicPolyReport,
    MobiusMap,
    QuadClass,
    affine_normalize_to,
    as_polynomial,
    canonical_n1,
    canonical_n2,
    classify_quadratic,
    conjugate_map,
    cubic_normal_form,
    cubic_polynomial_condition,
    exceptional_point_check,
    mobius_apply,
    mobius_from_three_points,
    multiplier_spectrum,
    normal_form_indices,
    normalize_affine,
    quadratic_conjugacy_witness,
    recognize_newton_map,
    unicritical_check,
)
from .dynamics import (
    BasinImage,
    JuliaClass,
    JuliaVariant,
    OrbitResult,
    Viewport,
    classify_critical_orbits,
    iterate_orbit,
    julia_topology_predict,
    render_basins,
)
from .errors import (
    DegenerateMap,
    DegenerateTriple,
    DegreeMismatch,
    LoopTooLarge,
    NewtonAtlasError,
    NonConvergence,
    NonSimpleFixedPoint,
    NotCubic,
    NotFixed,
    NotQuadratic,
    NotSuperattracting,
    ParabolicPoint,
    TooFewPoints,
    UnsupportedDegree,
)
from .imaging import (
    FINITE_COLORS,
    INFINITY_COLOR,
    UNRESOLVED_COLOR,
    palette_for,
    read_ppm,
    render_rgb,
    write_ppm,
)
from .newton_map import (
    FactoredRational,
    FixedPointClass,
    FixedPointRecord,
    RationalMap,
    build_newton_map,
    classify_multiplier,
    critical_points,
    fixed_points,
    map_fixed_points,
    multiplier_at,
    newton_degree,
    reduce_map,
    residue_index,
    residue_index_contour,
    verify_rfpt,
)
from .rational_core import INF, is_inf, peval, poly_from_factors, poly_roots

__all__ = [
    "INF",
    "BasinImage",
    "CubicPolyReport",
    "DegenerateMap",
    "DegenerateTriple",
    "DegreeMismatch",
    "FINITE_COLORS",
    "FactoredRational",
    "FixedPointClass",
    "FixedPointRecord",
    "INFINITY_COLOR",
    "JuliaClass",
    "JuliaVariant",
    "LoopTooLarge",
    "MobiusMap",
    "NewtonAtlasError",
    "NonConvergence",
    "NonSimpleFixedPoint",
    "NotCubic",
    "NotFixed",
    "NotQuadratic",
    "NotSuperattracting",
    "OrbitResult",
    "ParabolicPoint",
    "QuadClass",
    "RationalMap",
    "TooFewPoints",
    "UNRESOLVED_COLOR",
    "UnsupportedDegree",
    "Viewport",
    "affine_normalize_to",
    "as_polynomial",
    "build_newton_map",
    "canonical_n1",
    "canonical_n2",
    "classify_critical_orbits",
    "classify_multiplier",
    "classify_quadratic",
    "conjugate_map",
    "critical_points",
    "cubic_normal_form",
    "cubic_polynomial_condition",
    "exceptional_point_check",
    "fixed_points",
    "is_inf",
    "iterate_orbit",
    "julia_topology_predict",
    "map_fixed_points",
    "mobius_apply",
    "mobius_from_three_points",
    "multiplier_at",
    "multiplier_spectrum",
    "newton_degree",
    "normal_form_indices",
    "normalize_affine",
    "palette_for",
    "peval",
    "poly_from_factors",
    "poly_roots",
    "quadratic_conjugacy_witness",
    "read_ppm",
    "recognize_newton_map",
    "reduce_map",
    "render_basins",
    "render_rgb",
    "residue_index",
    "residue_index_contour",
    "unicritical_check",
    "verify_rfpt",
    "write_ppm",
]
