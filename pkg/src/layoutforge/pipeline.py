"""End-to-end evaluation and optimization of a parametric floor plan.

A design problem bundles the wall graph, its parameter bounds, the
sampling grid, and the two analysis regions. Evaluating a parameter
vector applies the transforms, samples the grid, builds the visibility
graph, and reduces it to aggregate metrics plus soft-constraint
penalties. One evaluation per candidate is shared by every objective.

When a candidate empties a region (all vertices swallowed by walls or
pushed outside), it receives a maximal penalty and zeroed metrics
instead of an error, so optimization can route around it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .cma import TerminationCriteria
from .diversity import DiversityConfig
from .errors import EmptyRegionError
from .geometry import (
    DEFAULT_ARC_SEGMENTS,
    DEFAULT_CLEARANCE_RADIUS,
    ArchitecturalGraph,
    ParamSpec,
    clearance,
    wall_length_penalty,
)
from .grid import GridSpec, Region, sample_grid
from .hierarchy import HierarchyResult, hierarchical_optimize
from .metrics import MetricsReport, combined_score, compute_metrics
from .visibility import build_visibility_graph

MetricKey = Literal["penalty", "degree", "depth", "entropy"]
METRIC_KEYS: tuple[MetricKey, ...] = ("penalty", "degree", "depth", "entropy")


@dataclass(frozen=True)
class PenaltyConfig:
    """Soft-constraint weights; either term can be switched off."""

    clearance_enabled: bool = True
    clearance_weight: float = 1.0
    clearance_radius: float = DEFAULT_CLEARANCE_RADIUS
    arc_segments: int = DEFAULT_ARC_SEGMENTS
    wall_length_enabled: bool = True
    wall_length_weight: float = 1.0
    empty_region_penalty: float = 1e9


@dataclass(frozen=True)
class ObjectiveSpec:
    """One hierarchy stage: which metric, how much gain to keep.

    Canonical orientation maximizes degree and entropy and minimizes
    depth and penalty; ``invert`` flips it for runs that deliberately
    seek the opposite.
    """

    metric: MetricKey
    handover: float = 0.7
    invert: bool = False


DEFAULT_OBJECTIVES: tuple[ObjectiveSpec, ...] = (
    ObjectiveSpec("penalty"),
    ObjectiveSpec("degree"),
    ObjectiveSpec("depth"),
    ObjectiveSpec("entropy"),
)


@dataclass(frozen=True)
class OptimizationConfig:
    """Budgets and strategy settings for one optimization round."""

    members: int = 5
    objectives: tuple[ObjectiveSpec, ...] = DEFAULT_OBJECTIVES
    stage_evaluations: int = 1500
    diversity_evaluations: int = 3000
    stagnation_window: int = 30
    target_fraction: float = 0.95
    sigma0: float | None = None
    population: int | None = None
    threshold_weight: float = 1e12
    diversity: DiversityConfig = field(default_factory=DiversityConfig)

    def stage_criteria(self) -> TerminationCriteria:
        return TerminationCriteria(
            max_evaluations=self.stage_evaluations,
            stagnation_window=self.stagnation_window,
            target_fraction=self.target_fraction,
        )

    def diversity_criteria(self) -> TerminationCriteria:
        return TerminationCriteria(
            max_evaluations=self.diversity_evaluations,
            stagnation_window=self.stagnation_window,
            target_fraction=self.target_fraction,
        )


@dataclass(frozen=True)
class DesignProblem:
    """A parametric layout plus everything needed to score it."""

    graph: ArchitecturalGraph
    params: ParamSpec
    grid: GridSpec
    query: Region
    reference: Region
    penalties: PenaltyConfig = PenaltyConfig()


@dataclass(frozen=True)
class CandidateEvaluation:
    """Scored snapshot of one parameter vector."""

    params: np.ndarray
    mean_degree: float
    mean_depth: float
    mean_entropy: float
    clearance_area: float
    clearance_cost: float
    wall_length_cost: float
    penalty: float
    combined: float
    vertex_count: int
    empty_region: bool
    report: MetricsReport | None = None


def evaluate(
    problem: DesignProblem,
    p: np.ndarray,
    roots: Literal["query", "all"] = "query",
    keep_report: bool = False,
) -> CandidateEvaluation:
    """Score one parameter vector.

    ``roots="query"`` computes exactly what the aggregates need;
    ``roots="all"`` also fills per-vertex depth and entropy everywhere
    for heatmap export (set ``keep_report`` to get the arrays back).
    """
    p = problem.params.validate_vector(p)
    cfg = problem.penalties
    transformed = problem.graph if p.size == 0 else _apply(problem, p)

    clearance_area = 0.0
    clearance_cost = 0.0
    if cfg.clearance_enabled:
        clearance_area = clearance(transformed.walls, cfg.clearance_radius, cfg.arc_segments)
        clearance_cost = cfg.clearance_weight * clearance_area**2
    wall_cost = 0.0
    if cfg.wall_length_enabled:
        wall_cost = cfg.wall_length_weight * wall_length_penalty(transformed, problem.graph)

    try:
        grid = sample_grid(problem.grid, transformed.walls, problem.query, problem.reference)
    except EmptyRegionError:
        return CandidateEvaluation(
            params=p.copy(),
            mean_degree=0.0,
            mean_depth=0.0,
            mean_entropy=0.0,
            clearance_area=clearance_area,
            clearance_cost=clearance_cost,
            wall_length_cost=wall_cost,
            penalty=cfg.empty_region_penalty,
            combined=0.0,
            vertex_count=0,
            empty_region=True,
        )

    graph = build_visibility_graph(grid, transformed.walls)
    report = compute_metrics(graph, roots)
    return CandidateEvaluation(
        params=p.copy(),
        mean_degree=report.mean_degree,
        mean_depth=report.mean_depth,
        mean_entropy=report.mean_entropy,
        clearance_area=clearance_area,
        clearance_cost=clearance_cost,
        wall_length_cost=wall_cost,
        penalty=clearance_cost + wall_cost,
        combined=combined_score(report),
        vertex_count=grid.vertex_count,
        empty_region=False,
        report=report if keep_report else None,
    )


def _apply(problem: DesignProblem, p: np.ndarray) -> ArchitecturalGraph:
    from .geometry import apply_params

    return apply_params(problem.graph, problem.params, p)


def transformed_graph(problem: DesignProblem, p: np.ndarray) -> ArchitecturalGraph:
    """The wall graph with parameter vector ``p`` applied."""
    p = problem.params.validate_vector(p)
    return problem.graph if p.size == 0 else _apply(problem, p)


def metric_value(ev: CandidateEvaluation, spec: ObjectiveSpec) -> float:
    """Signed, maximization-oriented value of one objective."""
    base = {
        "penalty": -ev.penalty,
        "degree": ev.mean_degree,
        "depth": -ev.mean_depth,
        "entropy": ev.mean_entropy,
    }[spec.metric]
    return -base if spec.invert else base


class EvaluationCache:
    """Memoizes evaluations by parameter bytes; optimization reuses one
    evaluation per candidate across all objectives."""

    def __init__(self, problem: DesignProblem, max_entries: int = 20000) -> None:
        self._problem = problem
        self._max = max_entries
        self._store: dict[bytes, CandidateEvaluation] = {}
        self.calls = 0
        self.misses = 0

    def get(self, p: np.ndarray) -> CandidateEvaluation:
        key = np.asarray(p, dtype=float).tobytes()
        self.calls += 1
        hit = self._store.get(key)
        if hit is not None:
            return hit
        self.misses += 1
        ev = evaluate(self._problem, p)
        if len(self._store) >= self._max:
            self._store.pop(next(iter(self._store)))
        self._store[key] = ev
        return ev


@dataclass
class MemberOutcome:
    """One returned design: its parameters and full evaluation."""

    index: int
    params: np.ndarray
    evaluation: CandidateEvaluation
    graph: ArchitecturalGraph


@dataclass
class RoundResult:
    """Everything produced by one optimization round."""

    seed: int
    config: OptimizationConfig
    default: CandidateEvaluation
    members: list[MemberOutcome]
    hierarchy: HierarchyResult
    evaluations: int


def run_round(
    problem: DesignProblem,
    config: OptimizationConfig | None = None,
    seed: int = 0,
    p0: np.ndarray | None = None,
    on_generation: Callable[[str, int], None] | None = None,
) -> RoundResult:
    """One full optimization round: stage hierarchy, then diversity.

    Deterministic for a fixed seed. ``on_generation`` may raise to abort
    (used for job cancellation).
    """
    config = config or OptimizationConfig()
    if p0 is None:
        p0 = np.zeros(problem.params.dimension)
    p0 = problem.params.validate_vector(p0)
    rng = np.random.default_rng(seed)
    cache = EvaluationCache(problem)

    def vector_fn(p: np.ndarray) -> np.ndarray:
        ev = cache.get(p)
        return np.array([metric_value(ev, s) for s in config.objectives], dtype=float)

    hierarchy = hierarchical_optimize(
        vector_fn,
        p0,
        problem.params.lower_bounds(),
        problem.params.upper_bounds(),
        n_members=config.members,
        criteria=config.stage_criteria(),
        diversity_criteria=config.diversity_criteria(),
        handover=[s.handover for s in config.objectives],
        sigma0=config.sigma0,
        lam=config.population,
        threshold_weight=config.threshold_weight,
        diversity=config.diversity,
        rng=rng,
        labels=[s.metric for s in config.objectives],
        on_generation=on_generation,
    )

    members = []
    for k, p in enumerate(hierarchy.members):
        ev = evaluate(problem, p, roots="all", keep_report=True)
        members.append(
            MemberOutcome(index=k, params=p.copy(), evaluation=ev, graph=transformed_graph(problem, p))
        )

    default = evaluate(problem, p0, roots="all", keep_report=True)
    return RoundResult(
        seed=seed,
        config=config,
        default=default,
        members=members,
        hierarchy=hierarchy,
        evaluations=hierarchy.total_evaluations,
    )
