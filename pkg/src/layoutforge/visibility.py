"""Visibility graph over sampled grid vertices.

Two vertices are connected when the open sight line between them crosses
no wall. Only pairs that involve the reference region are tested: a
query vertex sees reference vertices, reference vertices see each other,
but query-query pairs are skipped. Adjacency is stored as a packed
strictly-upper-triangular boolean vector indexed by pair_index.

The builder counts how many sight lines it tested (``los_tests``) and
how many line-against-wall checks that cost (``wall_checks``) so that
scaling behavior can be measured without wall clocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import WallSegment
from .grid import SampledGrid


def pair_index(i: int, j: int, n: int) -> int:
    """Offset of unordered pair (i, j), i < j, in the packed upper triangle."""
    if not 0 <= i < j < n:
        raise ValueError(f"pair ({i}, {j}) out of order for n={n}")
    return i * n - (i * (i + 1)) // 2 + (j - i - 1)


@dataclass(frozen=True)
class VisibilityGraph:
    """Packed symmetric adjacency over ``n`` vertices plus region masks."""

    n: int
    bits: np.ndarray  # (n*(n-1)//2,) bool, strictly upper triangular
    points: np.ndarray  # (n, 2) vertex coordinates
    query_mask: np.ndarray  # (n,) bool
    reference_mask: np.ndarray  # (n,) bool
    los_tests: int
    wall_checks: int

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        if i > j:
            i, j = j, i
        return bool(self.bits[pair_index(i, j, self.n)])

    def adjacency_matrix(self) -> np.ndarray:
        """Dense symmetric boolean adjacency with an empty diagonal."""
        adj = np.zeros((self.n, self.n), dtype=bool)
        iu, ju = np.triu_indices(self.n, k=1)
        adj[iu, ju] = self.bits
        adj[ju, iu] = self.bits
        return adj

    def degrees(self) -> np.ndarray:
        return self.adjacency_matrix().sum(axis=1).astype(np.int64)


def _blocked_by_wall(
    pa: np.ndarray, pb: np.ndarray, wall: WallSegment
) -> np.ndarray:
    """Vectorized segment intersection of sight lines against one wall.

    Mirrors geometry.segments_intersect exactly: orientation sign tests
    plus collinear bounding-box checks, endpoint touches included.
    """
    ax, ay = pa[:, 0], pa[:, 1]
    bx, by = pb[:, 0], pb[:, 1]
    wax, way, wbx, wby = wall.a.x, wall.a.y, wall.b.x, wall.b.y

    d1 = (wbx - wax) * (ay - way) - (wby - way) * (ax - wax)
    d2 = (wbx - wax) * (by - way) - (wby - way) * (bx - wax)
    d3 = (bx - ax) * (way - ay) - (by - ay) * (wax - ax)
    d4 = (bx - ax) * (wby - ay) - (by - ay) * (wbx - ax)

    proper = (((d1 > 0) & (d2 < 0)) | ((d1 < 0) & (d2 > 0))) & (
        ((d3 > 0) & (d4 < 0)) | ((d3 < 0) & (d4 > 0))
    )

    wx_lo, wx_hi = min(wax, wbx), max(wax, wbx)
    wy_lo, wy_hi = min(way, wby), max(way, wby)
    touch = (d1 == 0) & (wx_lo <= ax) & (ax <= wx_hi) & (wy_lo <= ay) & (ay <= wy_hi)
    touch |= (d2 == 0) & (wx_lo <= bx) & (bx <= wx_hi) & (wy_lo <= by) & (by <= wy_hi)
    sx_lo, sx_hi = np.minimum(ax, bx), np.maximum(ax, bx)
    sy_lo, sy_hi = np.minimum(ay, by), np.maximum(ay, by)
    touch |= (d3 == 0) & (sx_lo <= wax) & (wax <= sx_hi) & (sy_lo <= way) & (way <= sy_hi)
    touch |= (d4 == 0) & (sx_lo <= wbx) & (wbx <= sx_hi) & (sy_lo <= wby) & (wby <= sy_hi)
    return proper | touch


def build_visibility_graph(
    grid: SampledGrid,
    walls: tuple[WallSegment, ...] | list[WallSegment],
    pair_chunk: int = 2_000_000,
) -> VisibilityGraph:
    """Test eligible vertex pairs for line of sight and pack the result.

    A pair is eligible when at least one side is a reference vertex and
    the other is query or reference. Each eligible pair is tested against
    every wall; the counters record exactly that work.
    """
    n = grid.vertex_count
    pts = grid.points
    q, r = grid.query_mask, grid.reference_mask

    bits = np.zeros(n * (n - 1) // 2, dtype=bool)
    iu, ju = np.triu_indices(n, k=1)
    eligible = (r[iu] & r[ju]) | (q[iu] & r[ju]) | (r[iu] & q[ju])
    idx = np.flatnonzero(eligible)

    los_tests = int(idx.size)
    wall_checks = 0
    for start in range(0, idx.size, pair_chunk):
        sel = idx[start : start + pair_chunk]
        pa = pts[iu[sel]]
        pb = pts[ju[sel]]
        visible = np.ones(sel.size, dtype=bool)
        for wall in walls:
            visible &= ~_blocked_by_wall(pa, pb, wall)
            wall_checks += int(sel.size)
        bits[sel] = visible
    return VisibilityGraph(
        n=n,
        bits=bits,
        points=pts,
        query_mask=q,
        reference_mask=r,
        los_tests=los_tests,
        wall_checks=wall_checks,
    )
