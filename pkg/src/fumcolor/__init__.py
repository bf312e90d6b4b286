"""Facial unique-maximum coloring toolkit for plane graphs."""

from .constructive import (
    CaseStep,
    CaseTrace,
    ExtensionProblem,
    check_transfer,
    extend_precoloring,
    fum_color_star_forest,
)
from .exact_solver import (
    ChiFumResult,
    Limits,
    SolveResult,
    Status,
    chi_fum,
    fum_colorable,
)
from .formats import GraphDocument, GraphFormat, deserialize, export_dot, serialize
from .fum_core import (
    EMPTY_PATH,
    InducedClass,
    PrecoloredPath,
    Scope,
    VerificationReport,
    XSet,
    compute_xset,
    is_proper,
    is_star_forest,
    verify_extension,
    verify_fum,
)
from .instance_sources import (
    FilterKind,
    SearchReport,
    Triangulation,
    TriangulationMinusRandomEdges,
    apply_filter,
    canonical_id,
    encode_planar_code,
    enumerate_small,
    parse_planar_code,
    planar_code_stream,
    random_plane_graph,
    search_counterexamples,
)
from .plane_graph import (
    BoundaryClass,
    Cycle,
    Disconnected,
    Face,
    FaceSet,
    NoInternalFaces,
    PlaneGraph,
    WalkWithCutVertex,
    build_plane_graph,
    chords_of_outer_cycle,
    classify_boundary,
    induced_plane_subgraph,
    interior_closure,
    split_at_separator,
    trace_faces,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
