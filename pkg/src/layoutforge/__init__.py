"""Space-syntax analysis and diversity-driven optimization of floor plans."""

from .cma import CmaState, Population, TerminationCriteria, maximize, sample_population, terminated, update
from .diversity import (
    DiversityConfig,
    DiversityResult,
    div_opt,
    diversity_score,
    min_distance_penalty,
    normalized_distance,
)
from .documents import (
    LayoutDocument,
    canonical_json,
    config_to_dict,
    evaluation_summary,
    heatmap_csv,
    heatmap_document,
    layout_to_json,
    parse_config,
    parse_layout,
    parse_penalties,
    round_manifest,
    serialize_layout,
    with_graph,
)
from .errors import (
    EmptyRegionError,
    JobCancelled,
    LayoutForgeError,
    OptimizationError,
    SchemaError,
)
from .forest import ForestStats, TreeStats, build_forest, tree_depth, tree_entropy
from .geometry import (
    ArchitecturalGraph,
    ElementGroup,
    ParamBound,
    ParamKind,
    ParamSpec,
    Point2,
    WallSegment,
    apply_params,
    capsule_polygon,
    clearance,
    clearance_penalty,
    convex_clip,
    polygon_area,
    segments_intersect,
    wall_length_penalty,
    walls_adjoin,
)
from .grid import GridSpec, Region, SampledGrid, points_in_polygon, sample_grid
from .hierarchy import (
    HierarchyResult,
    StageRecord,
    ThresholdFn,
    hierarchical_optimize,
    threshold_value,
    violation_cost,
)
from .metrics import (
    MetricsReport,
    combined_score,
    combined_values,
    compute_metrics,
    normalized_mean_degree,
)
from .pipeline import (
    DEFAULT_OBJECTIVES,
    CandidateEvaluation,
    DesignProblem,
    EvaluationCache,
    MemberOutcome,
    ObjectiveSpec,
    OptimizationConfig,
    PenaltyConfig,
    RoundResult,
    evaluate,
    metric_value,
    run_round,
    transformed_graph,
)
from .visibility import VisibilityGraph, build_visibility_graph, pair_index

__all__ = [name for name in dir() if not name.startswith("_")]
