"""Curvature analytics for doubly-weighted multiplex graphs.

The package models graphs whose vertices and edges both carry positive
weights, stacks them into multiplex graphs whose inter-layer edges are
either given explicitly or derived from per-layer attachment strengths,
and scores edges and vertices with a Forman-style curvature. On top of
that sit sensitivity diagnostics, per-layer weight normalization, a
cross-layer vertex evaluation with a three-step weakness search, random
graph generators, and feature extraction for downstream classifiers.
"""

from .curvature import (
    CurvatureBounds,
    CurvatureReport,
    EdgeCurvature,
    curvature_report,
    forman_inter_compile,
    forman_monolayer,
    forman_multiplex,
    gamma_partition,
    inter_curvature_bounds,
)
from .errors import (
    DegenerateGraph,
    DuplicateEdge,
    EdgeNotFound,
    EmptyLayerList,
    GraphFileSyntaxError,
    IndexOutOfRange,
    InvalidConfig,
    InvalidSpec,
    MismatchedVertexCounts,
    MulticurvError,
    NoEdges,
    NonPositiveWeight,
    NotACompileGraph,
    NotAnInterEdge,
    SameEdge,
    SelfLoop,
    ValidationError,
    VertexNotOnEdge,
)
from .evaluation import (
    EvaluationReport,
    EvaluationRow,
    WeaknessFinding,
    ce_lower_bound,
    ce_uniform,
    ce_uniform_printed,
    comprehensive_evaluation,
    difference_scores,
    identify_weakness,
    intra_curvature_sums_by_layer,
)
from .features import (
    CurvatureStatsFeaturizer,
    FeatureMatrix,
    TraditionalStatsFeaturizer,
    WLLabelDictionary,
    WLSubtreeFeaturizer,
    ce_stat_features,
    ce_statistics,
    extract_features,
    traditional_features,
    wl_histogram,
)
from .generators import (
    DatasetSample,
    GeneratorSpec,
    build_compile_experiment,
    generate,
    parse_generator_spec,
    synthesize_classification_dataset,
    synthesize_weight_noise_dataset,
)
from .graph import (
    CompileGraph,
    DoublyWeightedGraph,
    MultiplexGraph,
    StateVertex,
    compile_layers,
)
from .io import (
    GraphDocument,
    parse_graph_file,
    parse_graph_text,
    serialize_graph,
    write_graph_file,
)
from .normalization import (
    NormalizationScheme,
    apply_scheme,
    bounded_scale,
    mean_normalize,
    normalize_layers,
)
from .sensitivity import (
    SensitivityRecord,
    dimensionless_sensitivity,
    finite_difference_partial,
    partial_derivative,
    reweighting_stability,
    sensitivity_map,
    sensitivity_records_for_edge,
)

__version__ = "0.1.0"

__all__ = [
    "CompileGraph",
    "CurvatureBounds",
    "CurvatureReport",
    "CurvatureStatsFeaturizer",
    "DatasetSample",
    "DegenerateGraph",
    "DoublyWeightedGraph",
    "DuplicateEdge",
    "EdgeCurvature",
    "EdgeNotFound",
    "EmptyLayerList",
    "EvaluationReport",
    "EvaluationRow",
    "FeatureMatrix",
    "GeneratorSpec",
    "GraphDocument",
    "GraphFileSyntaxError",
    "IndexOutOfRange",
    "InvalidConfig",
    "InvalidSpec",
    "MismatchedVertexCounts",
    "MulticurvError",
    "MultiplexGraph",
    "NoEdges",
    "NonPositiveWeight",
    "NormalizationScheme",
    "NotACompileGraph",
    "NotAnInterEdge",
    "SameEdge",
    "SelfLoop",
    "SensitivityRecord",
    "StateVertex",
    "TraditionalStatsFeaturizer",
    "ValidationError",
    "VertexNotOnEdge",
    "WLLabelDictionary",
    "WLSubtreeFeaturizer",
    "WeaknessFinding",
    "apply_scheme",
    "bounded_scale",
    "build_compile_experiment",
    "ce_lower_bound",
    "ce_stat_features",
    "ce_statistics",
    "ce_uniform",
    "ce_uniform_printed",
    "comprehensive_evaluation",
    "compile_layers",
    "curvature_report",
    "difference_scores",
    "dimensionless_sensitivity",
    "extract_features",
    "finite_difference_partial",
    "forman_inter_compile",
    "forman_monolayer",
    "forman_multiplex",
    "gamma_partition",
    "generate",
    "identify_weakness",
    "inter_curvature_bounds",
    "intra_curvature_sums_by_layer",
    "mean_normalize",
    "normalize_layers",
    "parse_generator_spec",
    "parse_graph_file",
    "parse_graph_text",
    "partial_derivative",
    "reweighting_stability",
    "sensitivity_map",
    "sensitivity_records_for_edge",
    "serialize_graph",
    "synthesize_classification_dataset",
    "synthesize_weight_noise_dataset",
    "traditional_features",
    "wl_histogram",
    "write_graph_file",
]
