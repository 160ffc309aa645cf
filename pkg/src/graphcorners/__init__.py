"""Corner graphs, skew products and K-theory of finite directed multigraphs."""

from .corner import CornerGraph, corner_graph
from .invariants import (
    IntegerMatrix,
    KTheoryResult,
    SmithDecomposition,
    corner_dimension_vector,
    fd_dimension_vector,
    k_theory,
    rational_rank,
    smith_normal_form,
    vertex_matrix,
)
from .iso import IsoResult, are_isomorphic
from .labelling import (
    CapExceededError,
    FixedPointResult,
    GroupSpec,
    KirchhoffResult,
    Labelling,
    cycle_labels_trivial,
    fixed_point_graph,
    fixed_point_pipeline,
    kirchhoff_check,
    path_label,
    reachable_skew,
    skew_product,
)
from .multigraph import (
    DirectedMultigraph,
    Edge,
    GraphFormatError,
    Path,
    hereditary_closure,
    is_acyclic,
    is_hereditary,
    parse_graph,
    path_range,
    relabelled,
    saturate,
    serialize_graph,
    to_dot,
)
from .subtree import (
    DirectedSubtree,
    SubtreeValidationError,
    build_spanning_subtree,
    descendants,
    root_path,
    validate_subtree,
)

__all__ = [
    "CapExceededError",
    "CornerGraph",
    "DirectedMultigraph",
    "DirectedSubtree",
    "Edge",
    "FixedPointResult",
    "GraphFormatError",
    "GroupSpec",
    "IntegerMatrix",
    "IsoResult",
    "KTheoryResult",
    "KirchhoffResult",
    "Labelling",
    "Path",
    "SmithDecomposition",
    "SubtreeValidationError",
    "are_isomorphic",
    "build_spanning_subtree",
    "corner_dimension_vector",
    "corner_graph",
    "cycle_labels_trivial",
    "descendants",
    "fd_dimension_vector",
    "fixed_point_graph",
    "fixed_point_pipeline",
    "hereditary_closure",
    "is_acyclic",
    "is_hereditary",
    "k_theory",
    "kirchhoff_check",
    "parse_graph",
    "path_label",
    "path_range",
    "rational_rank",
    "reachable_skew",
    "relabelled",
    "root_path",
    "saturate",
    "serialize_graph",
    "skew_product",
    "smith_normal_form",
    "to_dot",
    "validate_subtree",
    "vertex_matrix",
]
