"""Breadth-first tree forests over a visibility adjacency matrix.

Per root the minimum-height spanning tree of its component is summarized
by the number of vertices discovered at each level; level 1 is the root
itself. Degree, depth, and entropy metrics all derive from these counts.

Three interchangeable construction strategies mirror different
data-parallel kernel layouts and must produce identical statistics:

- ``naive``: every vertex re-scans the whole frontier each level, one
  dense product over all lanes at once; visited vertices are masked
  afterwards.
- ``cutoff``: visited vertices are filtered out before the scan, so only
  unvisited rows do work; lanes proceed independently.
- ``indexed``: the frontier is kept as an index list so each unvisited
  vertex checks only actual frontier members.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

Strategy = Literal["naive", "cutoff", "indexed"]

STRATEGIES: tuple[Strategy, ...] = ("naive", "cutoff", "indexed")


@dataclass(frozen=True)
class TreeStats:
    """Level profile of one root's breadth-first tree.

    ``level_counts[l - 1]`` is the number of vertices at level ``l``;
    the root sits alone at level 1.
    """

    level_counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.level_counts or self.level_counts[0] != 1:
            raise ValueError("level 1 must contain exactly the root")
        if any(c < 1 for c in self.level_counts):
            raise ValueError("every recorded level must be non-empty")

    @property
    def levels(self) -> int:
        return len(self.level_counts)

    @property
    def visited_count(self) -> int:
        return int(sum(self.level_counts))


@dataclass(frozen=True)
class ForestStats:
    """Per-root tree statistics, aligned with the requested root order."""

    roots: tuple[int, ...]
    trees: tuple[TreeStats, ...]

    def __post_init__(self) -> None:
        if len(self.roots) != len(self.trees):
            raise ValueError("roots and trees must align")

    def for_root(self, root: int) -> TreeStats:
        return self.trees[self.roots.index(root)]


def tree_depth(tree: TreeStats) -> int:
    """Height of the minimum-height tree: levels minus the root level."""
    return tree.levels - 1


def tree_entropy(tree: TreeStats) -> float:
    """Shannon entropy, in bits, of the level occupancy distribution."""
    counts = np.array(tree.level_counts, dtype=float)
    p = counts / tree.visited_count
    return float(-(p * np.log2(p)).sum())


def _forest_naive(adj: np.ndarray, roots: np.ndarray) -> list[tuple[int, ...]]:
    n = adj.shape[0]
    lanes = len(roots)
    adj_f = adj.astype(np.float32)
    frontier = np.zeros((lanes, n), dtype=np.float32)
    frontier[np.arange(lanes), roots] = 1.0
    visited = np.zeros((lanes, n), dtype=bool)
    visited[np.arange(lanes), roots] = True
    counts: list[list[int]] = [[1] for _ in range(lanes)]
    while True:
        # every lane scans the full frontier row, visited or not
        reached = (frontier @ adj_f) > 0.0
        children = reached & ~visited
        new = children.sum(axis=1)
        if not new.any():
            break
        for lane in range(lanes):
            if new[lane]:
                counts[lane].append(int(new[lane]))
        visited |= children
        frontier = children.astype(np.float32)
    return [tuple(c) for c in counts]


def _forest_cutoff(adj: np.ndarray, roots: np.ndarray) -> list[tuple[int, ...]]:
    n = adj.shape[0]
    out = []
    for root in roots:
        unvisited = np.ones(n, dtype=bool)
        unvisited[root] = False
        frontier = np.zeros(n, dtype=bool)
        frontier[root] = True
        counts = [1]
        while True:
            # only unvisited rows scan the frontier, but each scans it in full
            rows = np.flatnonzero(unvisited)
            if rows.size == 0:
                break
            hit = (adj[rows] & frontier).any(axis=1)
            children = rows[hit]
            if children.size == 0:
                break
            counts.append(int(children.size))
            unvisited[children] = False
            frontier = np.zeros(n, dtype=bool)
            frontier[children] = True
        out.append(tuple(counts))
    return out


def _forest_indexed(adj: np.ndarray, roots: np.ndarray) -> list[tuple[int, ...]]:
    n = adj.shape[0]
    out = []
    for root in roots:
        unvisited = np.ones(n, dtype=bool)
        unvisited[root] = False
        frontier_idx = np.array([root])
        counts = [1]
        while frontier_idx.size:
            rows = np.flatnonzero(unvisited)
            if rows.size == 0:
                break
            # each unvisited vertex checks only the indexed frontier columns
            hit = adj[np.ix_(rows, frontier_idx)].any(axis=1)
            children = rows[hit]
            if children.size == 0:
                break
            counts.append(int(children.size))
            unvisited[children] = False
            frontier_idx = children
        out.append(tuple(counts))
    return out


def build_forest(
    adjacency: np.ndarray,
    roots: Iterable[int],
    strategy: Strategy = "indexed",
) -> ForestStats:
    """Breadth-first level counts for every requested root.

    ``adjacency`` must be a symmetric boolean matrix with an empty
    diagonal. All strategies return identical statistics; they differ
    only in how much of the adjacency they inspect per level.
    """
    adj = np.asarray(adjacency)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise ValueError("adjacency must be square")
    if adj.dtype != bool:
        adj = adj.astype(bool)
    root_arr = np.array(list(roots), dtype=int)
    if root_arr.size and (root_arr.min() < 0 or root_arr.max() >= adj.shape[0]):
        raise ValueError("root index out of range")
    if strategy == "naive":
        counts = _forest_naive(adj, root_arr)
    elif strategy == "cutoff":
        counts = _forest_cutoff(adj, root_arr)
    elif strategy == "indexed":
        counts = _forest_indexed(adj, root_arr)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return ForestStats(
        roots=tuple(int(r) for r in root_arr),
        trees=tuple(TreeStats(c) for c in counts),
    )
