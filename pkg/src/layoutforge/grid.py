"""Lattice sampling of a floor plan into analysis vertices.

The plan is overlaid with a square lattice of cell centers at a given
resolution (cells per meter). Centers falling inside the query or
reference region become graph vertices; centers sitting on or nearly on
a wall are dropped so that sight lines never originate inside geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyRegionError
from .geometry import Point2, WallSegment

WALL_EXCLUSION_TOL = 1e-6  # meters; vertices closer to a wall are dropped
EDGE_TOL = 1e-9  # meters; points this close to a region edge count as inside
GRID_SNAP = 1e-9  # guards floor() against ties like 4.0 * 0.5


@dataclass(frozen=True)
class GridSpec:
    """Sampling lattice: origin corner, extent in meters, cells per meter."""

    origin: Point2
    width: float
    height: float
    resolution: float

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("grid extent must be positive")
        if self.resolution <= 0:
            raise ValueError("resolution must be positive")

    @property
    def pitch(self) -> float:
        return 1.0 / self.resolution

    @property
    def nx(self) -> int:
        return int(math.floor(self.width * self.resolution + GRID_SNAP))

    @property
    def ny(self) -> int:
        return int(math.floor(self.height * self.resolution + GRID_SNAP))


@dataclass(frozen=True)
class Region:
    """A simple polygon delimiting part of the plan, CCW or CW."""

    polygon: tuple[Point2, ...]

    def __post_init__(self) -> None:
        if len(self.polygon) < 3:
            raise ValueError("region polygon needs at least 3 vertices")


@dataclass(frozen=True)
class SampledGrid:
    """Vertices produced by sampling, with region membership masks."""

    points: np.ndarray  # (n, 2) cell-center coordinates, meters
    cells: np.ndarray  # (n, 2) integer lattice indices (ix, iy)
    query_mask: np.ndarray  # (n,) bool
    reference_mask: np.ndarray  # (n,) bool
    spec: GridSpec

    @property
    def vertex_count(self) -> int:
        return int(len(self.points))


def points_in_polygon(points: np.ndarray, polygon: tuple[Point2, ...]) -> np.ndarray:
    """Inclusion mask for ``points`` against a simple polygon.

    Points on the boundary (within EDGE_TOL) count as inside. Interior
    membership uses an even-odd ray cast to the right.
    """
    pts = np.asarray(points, dtype=float)
    px, py = pts[:, 0], pts[:, 1]
    poly = np.array([(v.x, v.y) for v in polygon], dtype=float)
    ax, ay = poly[:, 0], poly[:, 1]
    bx, by = np.roll(ax, -1), np.roll(ay, -1)

    inside = np.zeros(len(pts), dtype=bool)
    on_edge = np.zeros(len(pts), dtype=bool)
    for k in range(len(poly)):
        x1, y1, x2, y2 = ax[k], ay[k], bx[k], by[k]
        dx, dy = x2 - x1, y2 - y1
        seg_len2 = dx * dx + dy * dy
        t = ((px - x1) * dx + (py - y1) * dy) / seg_len2
        t = np.clip(t, 0.0, 1.0)
        dist2 = (px - (x1 + t * dx)) ** 2 + (py - (y1 + t * dy)) ** 2
        on_edge |= dist2 <= EDGE_TOL * EDGE_TOL

        crosses = (y1 > py) != (y2 > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            x_hit = x1 + (py - y1) * dx / np.where(dy == 0.0, 1.0, dy)
        inside ^= crosses & (px < x_hit)
    return inside | on_edge


def _point_segment_dist2(points: np.ndarray, wall: WallSegment) -> np.ndarray:
    px, py = points[:, 0], points[:, 1]
    ax, ay, bx, by = wall.a.x, wall.a.y, wall.b.x, wall.b.y
    dx, dy = bx - ax, by - ay
    t = ((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy)
    t = np.clip(t, 0.0, 1.0)
    return (px - (ax + t * dx)) ** 2 + (py - (ay + t * dy)) ** 2


def sample_grid(
    spec: GridSpec,
    walls: tuple[WallSegment, ...] | list[WallSegment],
    query: Region,
    reference: Region,
) -> SampledGrid:
    """Sample the lattice and classify vertices by region.

    Vertices are cell centers at ``origin + (i + 0.5) * pitch`` kept when
    they fall in the query or reference region and sit farther than
    WALL_EXCLUSION_TOL from every wall. Raises EmptyRegionError when
    either region ends up with no vertices.
    """
    nx, ny = spec.nx, spec.ny
    if nx == 0 or ny == 0:
        raise EmptyRegionError("grid extent is smaller than one cell")
    pitch = spec.pitch
    ix, iy = np.meshgrid(np.arange(nx), np.arange(ny), indexing="xy")
    ix, iy = ix.ravel(), iy.ravel()
    xs = spec.origin.x + (ix + 0.5) * pitch
    ys = spec.origin.y + (iy + 0.5) * pitch
    pts = np.column_stack([xs, ys])

    q_mask = points_in_polygon(pts, query.polygon)
    r_mask = points_in_polygon(pts, reference.polygon)
    keep = q_mask | r_mask
    tol2 = WALL_EXCLUSION_TOL * WALL_EXCLUSION_TOL
    for wall in walls:
        if not keep.any():
            break
        keep &= _point_segment_dist2(pts, wall) > tol2

    if not (q_mask & keep).any():
        raise EmptyRegionError("query region contains no vertices")
    if not (r_mask & keep).any():
        raise EmptyRegionError("reference region contains no vertices")

    sel = np.flatnonzero(keep)
    return SampledGrid(
        points=pts[sel],
        cells=np.column_stack([ix[sel], iy[sel]]).astype(int),
        query_mask=q_mask[sel],
        reference_mask=r_mask[sel],
        spec=spec,
    )
