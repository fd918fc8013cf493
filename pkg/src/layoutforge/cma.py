"""Covariance matrix adaptation evolution strategy, maximizing.

A rank-based (mu/mu_w, lambda) strategy: each generation samples lambda
candidates from a Gaussian, recombines the best mu by weighted mean,
and adapts the step size (cumulative step-size adaptation) and the
covariance (rank-one plus rank-mu update). Candidates are clamped to box
bounds at sampling time; the recombined mean stays inside the box
because the weights are positive and sum to one.

Fitness is maximized throughout. Callers that minimize pass the negated
objective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .errors import OptimizationError

EIGENVALUE_FLOOR = 1e-14


@dataclass(frozen=True)
class TerminationCriteria:
    """When to stop an optimization run.

    A run ends when the evaluation budget is spent or when the relative
    gain of the best value over the last ``stagnation_window``
    generations drops below the improvement floor. The floor defaults to
    ``1 - target_fraction``: reaching 95% of the attainable improvement
    tolerates a 5% relative crawl.
    """

    max_evaluations: int
    stagnation_window: int = 30
    target_fraction: float = 0.95
    improvement_floor: float | None = None

    @property
    def floor(self) -> float:
        if self.improvement_floor is not None:
            return self.improvement_floor
        return 1.0 - self.target_fraction


@dataclass(frozen=True)
class Population:
    """One generation of candidates; ``clamped`` flags bound hits."""

    vectors: np.ndarray  # (lam, n)
    clamped: np.ndarray  # (lam, n) bool


@dataclass(frozen=True)
class CmaState:
    """Full strategy state; ``update`` returns a new instance."""

    mean: np.ndarray
    sigma: float
    cov: np.ndarray
    p_sigma: np.ndarray
    p_c: np.ndarray
    generation: int
    evaluations: int
    lam: int
    mu: int
    weights: np.ndarray  # (mu,) positive, sums to 1
    mu_eff: float
    c_sigma: float
    d_sigma: float
    c_c: float
    c1: float
    c_mu: float
    chi_n: float
    best_value: float
    best_vector: np.ndarray | None

    @property
    def dim(self) -> int:
        return int(self.mean.shape[0])

    @classmethod
    def fresh(cls, mean: np.ndarray, sigma: float, lam: int | None = None) -> "CmaState":
        mean = np.asarray(mean, dtype=float).copy()
        n = mean.shape[0]
        if sigma <= 0:
            raise ValueError("initial step size must be positive")
        if lam is None:
            lam = 4 + int(3 * math.log(n)) if n > 1 else 6
        if lam < 2:
            raise ValueError("population size must be at least 2")
        mu = lam // 2
        weights = np.log(lam / 2 + 0.5) - np.log(np.arange(1, mu + 1))
        weights /= weights.sum()
        mu_eff = 1.0 / float((weights**2).sum())
        c_sigma = (mu_eff + 2.0) / (n + mu_eff + 5.0)
        d_sigma = 1.0 + 2.0 * max(0.0, math.sqrt((mu_eff - 1.0) / (n + 1.0)) - 1.0) + c_sigma
        c_c = (4.0 + mu_eff / n) / (n + 4.0 + 2.0 * mu_eff / n)
        c1 = 2.0 / ((n + 1.3) ** 2 + mu_eff)
        c_mu = min(1.0 - c1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((n + 2.0) ** 2 + mu_eff))
        chi_n = math.sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n))
        return cls(
            mean=mean,
            sigma=float(sigma),
            cov=np.eye(n),
            p_sigma=np.zeros(n),
            p_c=np.zeros(n),
            generation=0,
            evaluations=0,
            lam=int(lam),
            mu=int(mu),
            weights=weights,
            mu_eff=mu_eff,
            c_sigma=c_sigma,
            d_sigma=d_sigma,
            c_c=c_c,
            c1=c1,
            c_mu=c_mu,
            chi_n=chi_n,
            best_value=-math.inf,
            best_vector=None,
        )


def _decompose(cov: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    values, vectors = np.linalg.eigh(cov)
    values = np.maximum(values, EIGENVALUE_FLOOR)
    if not (np.all(np.isfinite(values)) and np.all(np.isfinite(vectors))):
        raise OptimizationError("covariance decomposition produced non-finite values")
    return values, vectors


def sample_population(
    state: CmaState,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: np.random.Generator,
) -> Population:
    """Draw lambda candidates and clamp them into the box."""
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    values, vectors = _decompose(state.cov)
    z = rng.standard_normal((state.lam, state.dim))
    steps = (z * np.sqrt(values)) @ vectors.T
    raw = state.mean + state.sigma * steps
    clamped = (raw < lower) | (raw > upper)
    return Population(vectors=np.clip(raw, lower, upper), clamped=clamped)


def update(state: CmaState, vectors: np.ndarray, values: Sequence[float]) -> CmaState:
    """Advance one generation from scored candidates (higher is better)."""
    vectors = np.asarray(vectors, dtype=float)
    scores = np.asarray(values, dtype=float)
    if vectors.shape != (state.lam, state.dim) or scores.shape != (state.lam,):
        raise ValueError("population shape does not match the state")
    if not np.all(np.isfinite(scores)):
        raise OptimizationError("non-finite fitness values in population")

    n = state.dim
    order = np.argsort(-scores, kind="stable")
    top = vectors[order[: state.mu]]
    new_mean = state.weights @ top
    y_w = (new_mean - state.mean) / state.sigma

    eig_values, eig_vectors = _decompose(state.cov)
    inv_sqrt = (eig_vectors / np.sqrt(eig_values)) @ eig_vectors.T

    gen = state.generation + 1
    p_sigma = (1.0 - state.c_sigma) * state.p_sigma + math.sqrt(
        state.c_sigma * (2.0 - state.c_sigma) * state.mu_eff
    ) * (inv_sqrt @ y_w)
    ps_norm = float(np.linalg.norm(p_sigma))
    h_sig = ps_norm / math.sqrt(
        1.0 - (1.0 - state.c_sigma) ** (2 * gen)
    ) / state.chi_n < 1.4 + 2.0 / (n + 1.0)
    p_c = (1.0 - state.c_c) * state.p_c + (
        math.sqrt(state.c_c * (2.0 - state.c_c) * state.mu_eff) * y_w if h_sig else 0.0
    )

    y_top = (top - state.mean) / state.sigma
    rank_mu = (state.weights[:, None] * y_top).T @ y_top
    cov = (
        (1.0 - state.c1 - state.c_mu) * state.cov
        + state.c1
        * (np.outer(p_c, p_c) + (0.0 if h_sig else state.c_c * (2.0 - state.c_c)) * state.cov)
        + state.c_mu * rank_mu
    )
    cov = 0.5 * (cov + cov.T)

    sigma = state.sigma * math.exp(
        min(1.0, (state.c_sigma / state.d_sigma) * (ps_norm / state.chi_n - 1.0))
    )

    best_idx = int(np.argmax(scores))
    best_value = state.best_value
    best_vector = state.best_vector
    if scores[best_idx] > best_value:
        best_value = float(scores[best_idx])
        best_vector = vectors[best_idx].copy()

    return replace(
        state,
        mean=new_mean,
        sigma=sigma,
        cov=cov,
        p_sigma=p_sigma,
        p_c=p_c,
        generation=gen,
        evaluations=state.evaluations + state.lam,
        best_value=best_value,
        best_vector=best_vector,
    )


def terminated(
    state: CmaState,
    criteria: TerminationCriteria,
    history: Sequence[float],
) -> bool:
    """Budget spent, or best-value gain over the window fell below the floor.

    ``history`` holds the best value recorded after each generation.
    """
    if state.evaluations >= criteria.max_evaluations:
        return True
    w = criteria.stagnation_window
    if len(history) > w:
        base = history[-(w + 1)]
        gain = history[-1] - base
        rel = gain / max(abs(base), 1e-12)
        return rel < criteria.floor
    return False


def maximize(
    fn: Callable[[np.ndarray], float],
    mean0: np.ndarray,
    sigma0: float,
    lower: np.ndarray,
    upper: np.ndarray,
    criteria: TerminationCriteria,
    rng: np.random.Generator,
    lam: int | None = None,
) -> tuple[CmaState, list[float]]:
    """Run the strategy until termination; returns final state and history."""
    state = CmaState.fresh(np.asarray(mean0, dtype=float), sigma0, lam)
    history: list[float] = []
    while not terminated(state, criteria, history):
        pop = sample_population(state, lower, upper, rng)
        scores = np.array([fn(x) for x in pop.vectors], dtype=float)
        state = update(state, pop.vectors, scores)
        history.append(state.best_value)
    return state, history
