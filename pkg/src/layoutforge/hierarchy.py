"""Hierarchical multi-objective optimization with threshold handover.

Objectives are optimized one at a time, in priority order. After stage i
converges, a one-sided quadratic threshold locks in a fraction z_i of
the improvement just achieved: later stages may trade away at most
(1 - z_i) of it before the violation cost kicks in. The final stage
replaces single-point search with a diversity run, returning n distinct
members that all respect the accumulated thresholds.

Violation costs are added to stage fitness with a large weight so that
thresholds act as near-hard constraints while staying smooth; the
unweighted cost is exposed separately for reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .cma import CmaState, TerminationCriteria, sample_population, terminated, update
from .diversity import DiversityConfig, DiversityResult, div_opt
from .errors import OptimizationError

DEFAULT_HANDOVER = 0.7  # fraction of a stage's gain kept by its threshold
DEFAULT_THRESHOLD_WEIGHT = 1e12


@dataclass(frozen=True)
class ThresholdFn:
    """One-sided (or two-sided) quadratic well on one objective."""

    objective_index: int
    lower: float = -math.inf
    upper: float = math.inf


def threshold_value(t: ThresholdFn, x: float) -> float:
    """Zero inside [lower, upper], quadratic growth outside."""
    if x < t.lower:
        return (t.lower - x) ** 2
    if x > t.upper:
        return (x - t.upper) ** 2
    return 0.0


def violation_cost(values: Sequence[float], thresholds: Sequence[ThresholdFn]) -> float:
    """Sum of threshold violations over an objective value vector."""
    return float(sum(threshold_value(t, float(values[t.objective_index])) for t in thresholds))


@dataclass(frozen=True)
class StageRecord:
    """What one hierarchy stage did, for logs and manifests."""

    index: int
    label: str
    evaluations: int
    generations: int
    start_value: float
    optimum_value: float
    lower_bound: float


@dataclass
class HierarchyResult:
    members: np.ndarray  # (n_members, dim)
    thresholds: list[ThresholdFn]
    stages: list[StageRecord]
    diversity: DiversityResult
    total_evaluations: int


def hierarchical_optimize(
    objective_vector: Callable[[np.ndarray], np.ndarray],
    p0: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    *,
    n_members: int,
    criteria: TerminationCriteria,
    diversity_criteria: TerminationCriteria | None = None,
    handover: float | Sequence[float] = DEFAULT_HANDOVER,
    sigma0: float | None = None,
    lam: int | None = None,
    threshold_weight: float = DEFAULT_THRESHOLD_WEIGHT,
    diversity: DiversityConfig | None = None,
    rng: np.random.Generator | None = None,
    labels: Sequence[str] | None = None,
    on_generation: Callable[[str, int], None] | None = None,
) -> HierarchyResult:
    """Optimize each objective in turn, then diversify under thresholds.

    ``objective_vector`` maps a parameter vector to all objective values
    at once (they are maximized). ``handover`` is the kept fraction z per
    stage, scalar or one value per objective. ``criteria`` caps each
    stage; ``diversity_criteria`` (defaulting to ``criteria``) caps the
    final diversity run. ``on_generation`` receives a stage label and the
    running evaluation total, and may abort by raising.
    """
    p0 = np.asarray(p0, dtype=float)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    rng = rng if rng is not None else np.random.default_rng()
    probe = np.asarray(objective_vector(p0), dtype=float)
    n_objectives = probe.shape[0]
    if isinstance(handover, (int, float)):
        z = [float(handover)] * n_objectives
    else:
        z = [float(v) for v in handover]
        if len(z) != n_objectives:
            raise ValueError("one handover fraction per objective required")
    if any(not 0.0 <= v <= 1.0 for v in z):
        raise ValueError("handover fractions must lie in [0, 1]")
    if labels is None:
        labels = [f"objective-{i}" for i in range(n_objectives)]

    if sigma0 is None:
        span = upper - lower
        sigma0 = 0.3 * float(span[span > 0].mean()) if (span > 0).any() else 0.3

    thresholds: list[ThresholdFn] = []
    stages: list[StageRecord] = []
    total_evaluations = 0

    for i in range(n_objectives):
        def stage_fitness(p: np.ndarray, _i: int = i) -> float:
            values = np.asarray(objective_vector(p), dtype=float)
            return float(values[_i]) - threshold_weight * violation_cost(values, thresholds)

        state = CmaState.fresh(p0, sigma0, lam)
        history: list[float] = []
        try:
            while not terminated(state, criteria, history):
                pop = sample_population(state, lower, upper, rng)
                scores = np.array([stage_fitness(x) for x in pop.vectors], dtype=float)
                state = update(state, pop.vectors, scores)
                history.append(state.best_value)
                if on_generation is not None:
                    on_generation(labels[i], total_evaluations + state.evaluations)
        except OptimizationError as exc:
            raise OptimizationError(f"stage {i} ({labels[i]}): {exc}") from exc
        total_evaluations += state.evaluations

        p_opt = state.best_vector if state.best_vector is not None else state.mean
        start_value = float(np.asarray(objective_vector(p0), dtype=float)[i])
        optimum_value = float(np.asarray(objective_vector(p_opt), dtype=float)[i])
        bound = start_value + z[i] * (optimum_value - start_value)
        thresholds.append(ThresholdFn(objective_index=i, lower=bound))
        stages.append(
            StageRecord(
                index=i,
                label=labels[i],
                evaluations=state.evaluations,
                generations=state.generation,
                start_value=start_value,
                optimum_value=optimum_value,
                lower_bound=bound,
            )
        )

    def feasibility_cost(p: np.ndarray) -> float:
        values = np.asarray(objective_vector(p), dtype=float)
        return threshold_weight * violation_cost(values, thresholds)

    div_gen = None
    if on_generation is not None:
        def div_gen(_round: int, evals: int) -> None:
            on_generation("diversity", total_evaluations + evals)

    result = div_opt(
        n_members,
        feasibility_cost,
        p0,
        lower,
        upper,
        diversity_criteria or criteria,
        rng,
        config=diversity,
        sigma0=sigma0,
        lam=lam,
        on_generation=div_gen,
    )
    total_evaluations += result.evaluations

    return HierarchyResult(
        members=result.members,
        thresholds=thresholds,
        stages=stages,
        diversity=result,
        total_evaluations=total_evaluations,
    )
