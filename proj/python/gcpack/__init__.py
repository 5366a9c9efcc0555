"""Generalized hyperbolic circle packings with prescribed total geodesic curvature."""

from ._core import (
    FaceLayout,
    GcpError,
    NotConvergedError,
    SolveResult,
    Triangulation,
    annulus,
    arc_length,
    arc_length_partials,
    check_feasibility,
    compare,
    dual_curvature,
    edge_length,
    face_geometry,
    interior_totals,
    layout_face,
    load_problem,
    radius,
    random_problem,
    solve,
    total_curvature,
    wheel,
)

__all__ = [
    "FaceLayout",
    "GcpError",
    "NotConvergedError",
    "SolveResult",
    "Triangulation",
    "annulus",
    "arc_length",
    "arc_length_partials",
    "check_feasibility",
    "compare",
    "dual_curvature",
    "edge_length",
    "face_geometry",
    "interior_totals",
    "layout_face",
    "load_problem",
    "radius",
    "random_problem",
    "solve",
    "total_curvature",
    "wheel",
]
