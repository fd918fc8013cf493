"""Diversity-driven search for a set of distinct good solutions.

Instead of one optimum, n coupled CMA-ES instances are evolved round-
robin, each maximizing spread from the other members minus the cost
``f`` of its own candidate. A clustering penalty switches on only when a
candidate comes closer than ``d_min`` to its nearest neighbor, so
members repel each other just enough and otherwise chase quality.

Distances are Euclidean after mapping every coordinate into [0, 1] by
its bounds, which makes ``d_min`` independent of parameter units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .cma import CmaState, TerminationCriteria, sample_population, update


@dataclass(frozen=True)
class DiversityConfig:
    """Weights of the diversity objective.

    ``d_min`` defaults to 0.1 * sqrt(dimension): 10% of the normalized
    box diagonal.
    """

    spread_weight: float = 1.0  # k: reward for summed distance to members
    clustering_weight: float = 100.0  # k_m: penalty under the d_min ring
    d_min: float | None = None

    def min_distance(self, dim: int) -> float:
        if self.d_min is not None:
            return self.d_min
        return 0.1 * math.sqrt(dim)


def _normalizer(lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    span = np.asarray(upper, dtype=float) - np.asarray(lower, dtype=float)
    # zero-width coordinates carry no distance
    return np.where(span > 0.0, span, np.inf)


def normalized_distance(
    a: np.ndarray, b: np.ndarray, lower: np.ndarray, upper: np.ndarray
) -> float:
    """Euclidean distance after per-coordinate [0, 1] normalization."""
    scale = _normalizer(lower, upper)
    diff = (np.asarray(a, dtype=float) - np.asarray(b, dtype=float)) / scale
    return float(np.linalg.norm(diff))


def min_distance_penalty(
    candidate: np.ndarray,
    others: Sequence[np.ndarray] | np.ndarray,
    d_min: float,
    lower: np.ndarray,
    upper: np.ndarray,
) -> float:
    """Squared shortfall of the nearest-neighbor distance below ``d_min``.

    Zero when no other member sits closer than ``d_min``; with no other
    members at all there is nothing to crowd, so zero.
    """
    others = np.asarray(others, dtype=float)
    if others.size == 0:
        return 0.0
    scale = _normalizer(lower, upper)
    diff = (others - np.asarray(candidate, dtype=float)) / scale
    nearest = float(np.sqrt((diff**2).sum(axis=1)).min())
    return min(0.0, nearest - d_min) ** 2


def diversity_score(
    candidate: np.ndarray,
    members: np.ndarray,
    slot: int,
    lower: np.ndarray,
    upper: np.ndarray,
    config: DiversityConfig,
) -> float:
    """Spread reward minus clustering penalty for a candidate in ``slot``.

    The candidate stands in for ``members[slot]``: it contributes zero
    distance to itself and is excluded from its own nearest-neighbor
    search.
    """
    members = np.asarray(members, dtype=float)
    others = np.delete(members, slot, axis=0)
    if others.size == 0:
        return 0.0
    scale = _normalizer(lower, upper)
    diff = (others - np.asarray(candidate, dtype=float)) / scale
    dists = np.sqrt((diff**2).sum(axis=1))
    d_min = config.min_distance(members.shape[1])
    shortfall = min(0.0, float(dists.min()) - d_min)
    return config.spread_weight * float(dists.sum()) - config.clustering_weight * shortfall**2


@dataclass
class DiversityResult:
    """Final member set; members are the per-member distribution means."""

    members: np.ndarray  # (n, dim)
    evaluations: int
    rounds: int
    cost_values: np.ndarray  # f at each member


def div_opt(
    n_members: int,
    cost: Callable[[np.ndarray], float],
    p0: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    criteria: TerminationCriteria,
    rng: np.random.Generator,
    config: DiversityConfig | None = None,
    sigma0: float | None = None,
    lam: int | None = None,
    on_generation: Callable[[int, int], None] | None = None,
) -> DiversityResult:
    """Evolve ``n_members`` coupled searches; each maximizes
    ``diversity_score - cost``.

    Members take turns: one generation of member m samples around its own
    mean, scores candidates against the current means of everyone else,
    and updates only its own state. With a single member the loop reduces
    to plain CMA-ES minimizing ``cost``.
    """
    if n_members < 1:
        raise ValueError("need at least one member")
    config = config or DiversityConfig()
    p0 = np.asarray(p0, dtype=float)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if sigma0 is None:
        span = upper - lower
        sigma0 = 0.3 * float(span[span > 0].mean()) if (span > 0).any() else 0.3

    states = [CmaState.fresh(p0, sigma0, lam) for _ in range(n_members)]
    means = np.tile(p0, (n_members, 1))
    histories: list[list[float]] = [[] for _ in range(n_members)]
    evaluations = 0
    rounds = 0

    def member_stagnant(m: int) -> bool:
        h = histories[m]
        w = criteria.stagnation_window
        if len(h) <= w:
            return False
        gain = h[-1] - h[-(w + 1)]
        return gain / max(abs(h[-(w + 1)]), 1e-12) < criteria.floor

    while evaluations < criteria.max_evaluations:
        if all(member_stagnant(m) for m in range(n_members)):
            break
        for m in range(n_members):
            pop = sample_population(states[m], lower, upper, rng)
            scores = np.array(
                [
                    diversity_score(x, means, m, lower, upper, config) - cost(x)
                    for x in pop.vectors
                ],
                dtype=float,
            )
            states[m] = update(states[m], pop.vectors, scores)
            means[m] = states[m].mean
            histories[m].append(states[m].best_value)
            evaluations += states[m].lam
        rounds += 1
        if on_generation is not None:
            on_generation(rounds, evaluations)

    return DiversityResult(
        members=means.copy(),
        evaluations=evaluations,
        rounds=rounds,
        cost_values=np.array([cost(p) for p in means], dtype=float),
    )
