"""Exact-rational toolkit for weighted curve arrangements on the
projective plane: Lelong numbers, structural upper level sets, and
certified decisions on whether a level set fits inside a line or a conic
with at most one exception."""

from .auxiliary import (
    BlendReport,
    BoundRow,
    RescaleReport,
    blend_single_line,
    blend_three_lines,
    line_weight_bound,
    residual_rescale,
)
from .cover import (
    Covered,
    CoverInstance,
    NotCoverable,
    UncoverableCurve,
    UncoveredPoints,
    Verdict,
    beta_of,
    check_cover_instance,
    conic_cover_check,
    evaluate_cover,
    find_heavy_points,
    line_cover_check,
    no_conic_all_but_one,
    verify_verdict,
    witness_contains_points,
)
from .currents import DivisorCurrent, LevelSet
from .harness import GenSpec, GeneratedInstance, RunReport, SweepGrid, exhaustive_sweep, generate, run_suite
from .projective import (
    Conic,
    Curve,
    Line,
    Point,
    ProjectiveMap,
    conic_from_lines,
    conic_rank,
    conic_space,
    incident,
    intersect_curves,
    is_irreducible,
    line_in_conic,
    line_through,
    max_on_curve,
    meet,
    multiplicity,
    on_common_curve,
)

__version__ = "0.1.0"

__all__ = [
    "BlendReport",
    "BoundRow",
    "Conic",
    "Covered",
    "CoverInstance",
    "Curve",
    "DivisorCurrent",
    "GenSpec",
    "GeneratedInstance",
    "LevelSet",
    "Line",
    "NotCoverable",
    "Point",
    "ProjectiveMap",
    "RescaleReport",
    "RunReport",
    "SweepGrid",
    "UncoverableCurve",
    "UncoveredPoints",
    "Verdict",
    "beta_of",
    "blend_single_line",
    "blend_three_lines",
    "check_cover_instance",
    "conic_cover_check",
    "conic_from_lines",
    "conic_rank",
    "conic_space",
    "evaluate_cover",
    "exhaustive_sweep",
    "find_heavy_points",
    "generate",
    "incident",
    "intersect_curves",
    "is_irreducible",
    "line_cover_check",
    "line_in_conic",
    "line_through",
    "line_weight_bound",
    "max_on_curve",
    "meet",
    "multiplicity",
    "no_conic_all_but_one",
    "on_common_curve",
    "residual_rescale",
    "run_suite",
    "verify_verdict",
    "witness_contains_points",
]
