"""Per-vertex and aggregate visibility metrics.

For each analyzed vertex: degree (how many vertices it sees), depth
(height of its breadth-first tree, i.e. how many visibility steps reach
the farthest vertex of its component), and entropy of the tree's level
occupancy in bits. Aggregates K, D, H average these over query vertices.

Metric orientation: designers usually want high degree, low depth, and
high entropy, so the combined per-vertex display value adds normalized
degree and entropy and subtracts normalized depth. Normalizers are the
empty-environment extremes: n - 1 for degree and depth, log2(n) for
entropy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .forest import Strategy, build_forest, tree_depth, tree_entropy
from .visibility import VisibilityGraph

Roots = Literal["query", "all"]


@dataclass(frozen=True)
class MetricsReport:
    """Per-vertex metrics plus query-region aggregates.

    Depth and entropy are only populated where ``computed`` is set; the
    aggregates always cover every query vertex.
    """

    degrees: np.ndarray  # (n,) int
    depths: np.ndarray  # (n,) float, 0 where not computed
    entropies: np.ndarray  # (n,) float, 0 where not computed
    computed: np.ndarray  # (n,) bool
    query_mask: np.ndarray
    reference_mask: np.ndarray
    points: np.ndarray  # (n, 2) vertex coordinates, meters
    vertex_count: int
    mean_degree: float
    mean_depth: float
    mean_entropy: float


def compute_metrics(
    graph: VisibilityGraph,
    roots: Roots | Iterable[int] = "query",
    strategy: Strategy = "indexed",
) -> MetricsReport:
    """Degrees for all vertices; depth and entropy for the chosen roots.

    ``roots="query"`` covers exactly what the aggregates need and is the
    fast path during optimization; ``roots="all"`` fills every vertex for
    heatmap export.
    """
    n = graph.n
    adj = graph.adjacency_matrix()
    degrees = adj.sum(axis=1).astype(np.int64)

    if isinstance(roots, str):
        if roots == "query":
            root_idx = np.flatnonzero(graph.query_mask)
        elif roots == "all":
            root_idx = np.arange(n)
        else:
            raise ValueError(f"unknown roots selector {roots!r}")
    else:
        root_idx = np.array(list(roots), dtype=int)

    missing = np.flatnonzero(graph.query_mask & ~np.isin(np.arange(n), root_idx))
    if missing.size:
        raise ValueError("roots must cover every query vertex")

    depths = np.zeros(n, dtype=float)
    entropies = np.zeros(n, dtype=float)
    computed = np.zeros(n, dtype=bool)
    forest = build_forest(adj, root_idx, strategy)
    for root, tree in zip(forest.roots, forest.trees):
        depths[root] = tree_depth(tree)
        entropies[root] = tree_entropy(tree)
        computed[root] = True

    q = graph.query_mask
    return MetricsReport(
        degrees=degrees,
        depths=depths,
        entropies=entropies,
        computed=computed,
        query_mask=q,
        reference_mask=graph.reference_mask,
        points=graph.points.copy(),
        vertex_count=n,
        mean_degree=float(degrees[q].mean()),
        mean_depth=float(depths[q].mean()),
        mean_entropy=float(entropies[q].mean()),
    )


def _normalizers(vertex_count: int) -> tuple[float, float]:
    """Degree/depth and entropy denominators for an n-vertex grid."""
    span = max(vertex_count - 1, 1)
    h_max = np.log2(vertex_count) if vertex_count > 1 else 1.0
    return float(span), float(h_max)


def combined_values(report: MetricsReport) -> np.ndarray:
    """Per-vertex normalized degree - depth + entropy, in [-1, 2]."""
    span, h_max = _normalizers(report.vertex_count)
    return report.degrees / span - report.depths / span + report.entropies / h_max


def combined_score(report: MetricsReport) -> float:
    """Mean combined value over the query region."""
    return float(combined_values(report)[report.query_mask].mean())


def normalized_mean_degree(report: MetricsReport) -> float:
    """Mean degree over query vertices as a fraction of n - 1.

    Unlike the raw mean degree this converges as the sampling resolution
    grows, which makes it the right quantity for resolution sweeps.
    """
    span, _ = _normalizers(report.vertex_count)
    return report.mean_degree / span
