"""Planar primitives for wall-based floor plans.

Walls are straight segments in meters. Element groups bundle walls that
move as one rigid unit under translation and rotation parameters; angles
are radians, counter-clockwise positive. Soft constraints on a candidate
layout are expressed as penalties: overlap area between thickened walls
(clearance) and change in total wall length.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

ENDPOINT_TOL = 1e-9  # endpoint coincidence tolerance, meters
DEFAULT_CLEARANCE_RADIUS = 0.5  # meters
DEFAULT_ARC_SEGMENTS = 16  # segments per semicircular capsule cap
BOUNDS_TOL = 1e-12  # clamping slack allowed on parameter vectors


@dataclass(frozen=True)
class Point2:
    """A point in the plane, meters."""

    x: float
    y: float

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class WallSegment:
    """A wall between two distinct endpoints."""

    id: str
    a: Point2
    b: Point2

    def __post_init__(self) -> None:
        if self.a.x == self.b.x and self.a.y == self.b.y:
            raise ValueError(f"wall {self.id!r} has zero length")

    @property
    def length(self) -> float:
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)


@dataclass(frozen=True)
class ElementGroup:
    """Walls that translate and rotate together about a shared pivot."""

    id: str
    wall_ids: tuple[str, ...]
    pivot: Point2


class ParamKind(enum.Enum):
    """What a single optimization variable does to its group."""

    TRANSLATION_X = "translation-x"
    TRANSLATION_Y = "translation-y"
    ROTATION = "rotation"


@dataclass(frozen=True)
class ParamBound:
    """One bounded optimization variable attached to a group."""

    group_id: str
    kind: ParamKind
    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ValueError(f"bounds for {self.group_id!r} must be finite")
        if self.lower > self.upper:
            raise ValueError(f"lower > upper for {self.group_id!r}")
        if self.kind is ParamKind.ROTATION:
            # rotations live on the principal range
            if self.lower < -math.pi or self.upper > math.pi:
                raise ValueError(f"rotation bounds for {self.group_id!r} outside [-pi, pi]")


@dataclass(frozen=True)
class ParamSpec:
    """Ordered parameter bounds; one entry per vector coordinate."""

    entries: tuple[ParamBound, ...]

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def lower_bounds(self) -> np.ndarray:
        return np.array([e.lower for e in self.entries], dtype=float)

    def upper_bounds(self) -> np.ndarray:
        return np.array([e.upper for e in self.entries], dtype=float)

    def validate_vector(self, p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if p.shape != (self.dimension,):
            raise ValueError(f"parameter vector has shape {p.shape}, expected ({self.dimension},)")
        if not np.all(np.isfinite(p)):
            raise ValueError("parameter vector contains non-finite values")
        return p

    def clamp(self, p: np.ndarray) -> np.ndarray:
        return np.clip(np.asarray(p, dtype=float), self.lower_bounds(), self.upper_bounds())

    def normalize(self, p: np.ndarray) -> np.ndarray:
        """Map each coordinate into [0, 1] by its bounds; zero-width spans map to 0."""
        p = self.validate_vector(p)
        lo, hi = self.lower_bounds(), self.upper_bounds()
        span = hi - lo
        out = np.zeros_like(p)
        wide = span > 0.0
        out[wide] = (p[wide] - lo[wide]) / span[wide]
        return out


@dataclass(frozen=True)
class ArchitecturalGraph:
    """A floor plan: walls plus the rigid groups defined over them."""

    walls: tuple[WallSegment, ...]
    groups: tuple[ElementGroup, ...] = ()

    def __post_init__(self) -> None:
        wall_ids = [w.id for w in self.walls]
        if len(set(wall_ids)) != len(wall_ids):
            raise ValueError("duplicate wall ids")
        group_ids = [g.id for g in self.groups]
        if len(set(group_ids)) != len(group_ids):
            raise ValueError("duplicate group ids")
        known = set(wall_ids)
        claimed: set[str] = set()
        for g in self.groups:
            for wid in g.wall_ids:
                if wid not in known:
                    raise ValueError(f"group {g.id!r} references unknown wall {wid!r}")
                if wid in claimed:
                    raise ValueError(f"wall {wid!r} belongs to more than one group")
                claimed.add(wid)

    def group_by_id(self, group_id: str) -> ElementGroup:
        for g in self.groups:
            if g.id == group_id:
                return g
        raise KeyError(group_id)

    def total_wall_length(self) -> float:
        return float(sum(w.length for w in self.walls))


def _rotate_about(p: Point2, pivot: Point2, angle: float) -> Point2:
    c, s = math.cos(angle), math.sin(angle)
    dx, dy = p.x - pivot.x, p.y - pivot.y
    return Point2(pivot.x + c * dx - s * dy, pivot.y + s * dx + c * dy)


def apply_params(graph: ArchitecturalGraph, spec: ParamSpec, p: np.ndarray) -> ArchitecturalGraph:
    """Return a copy of ``graph`` with each group rigidly transformed.

    Per group the rotation (about the group pivot) is applied first, then
    the translation. Multiple entries of the same kind on one group add up.
    Group pivots are carried along so repeated rounds rotate about the
    moved pivot.
    """
    p = spec.validate_vector(p)
    lo, hi = spec.lower_bounds(), spec.upper_bounds()
    if np.any(p < lo - BOUNDS_TOL) or np.any(p > hi + BOUNDS_TOL):
        raise ValueError("parameter vector violates its bounds")

    shifts: dict[str, list[float]] = {}  # group id -> [tx, ty, rot]
    for value, entry in zip(p, spec.entries):
        acc = shifts.setdefault(entry.group_id, [0.0, 0.0, 0.0])
        if entry.kind is ParamKind.TRANSLATION_X:
            acc[0] += float(value)
        elif entry.kind is ParamKind.TRANSLATION_Y:
            acc[1] += float(value)
        else:
            acc[2] += float(value)

    moved: dict[str, WallSegment] = {}
    new_groups = []
    for g in graph.groups:
        tx, ty, rot = shifts.get(g.id, [0.0, 0.0, 0.0])

        def transform(pt: Point2) -> Point2:
            if rot != 0.0:
                pt = _rotate_about(pt, g.pivot, rot)
            return Point2(pt.x + tx, pt.y + ty)

        for wid in g.wall_ids:
            w = next(w for w in graph.walls if w.id == wid)
            moved[wid] = WallSegment(w.id, transform(w.a), transform(w.b))
        new_groups.append(ElementGroup(g.id, g.wall_ids, Point2(g.pivot.x + tx, g.pivot.y + ty)))

    new_walls = tuple(moved.get(w.id, w) for w in graph.walls)
    return ArchitecturalGraph(new_walls, tuple(new_groups))


def _orient(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> float:
    """Signed double area of triangle abc; sign gives turn direction."""
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _on_segment(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> bool:
    """Whether c, known collinear with ab, lies within ab's bounding box."""
    return min(ax, bx) <= cx <= max(ax, bx) and min(ay, by) <= cy <= max(ay, by)


def segments_intersect(p1: Point2, p2: Point2, p3: Point2, p4: Point2) -> bool:
    """Whether closed segments p1p2 and p3p4 share any point.

    Uses orientation sign tests with explicit collinear handling; touching
    at a single endpoint counts as intersecting.
    """
    d1 = _orient(p3.x, p3.y, p4.x, p4.y, p1.x, p1.y)
    d2 = _orient(p3.x, p3.y, p4.x, p4.y, p2.x, p2.y)
    d3 = _orient(p1.x, p1.y, p2.x, p2.y, p3.x, p3.y)
    d4 = _orient(p1.x, p1.y, p2.x, p2.y, p4.x, p4.y)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    if d1 == 0 and _on_segment(p3.x, p3.y, p4.x, p4.y, p1.x, p1.y):
        return True
    if d2 == 0 and _on_segment(p3.x, p3.y, p4.x, p4.y, p2.x, p2.y):
        return True
    if d3 == 0 and _on_segment(p1.x, p1.y, p2.x, p2.y, p3.x, p3.y):
        return True
    if d4 == 0 and _on_segment(p1.x, p1.y, p2.x, p2.y, p4.x, p4.y):
        return True
    return False


def capsule_polygon(
    wall: WallSegment,
    radius: float = DEFAULT_CLEARANCE_RADIUS,
    arc_segments: int = DEFAULT_ARC_SEGMENTS,
) -> np.ndarray:
    """Convex CCW polygon approximating the wall dilated by a disc.

    Each semicircular end cap is discretized into ``arc_segments`` chords,
    so the polygon has ``2 * (arc_segments + 1)`` vertices and is inscribed
    in the exact capsule.
    """
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    if arc_segments < 1:
        raise ValueError("arc_segments must be >= 1")
    ax, ay, bx, by = wall.a.x, wall.a.y, wall.b.x, wall.b.y
    theta = math.atan2(by - ay, bx - ax)
    pts = []
    # cap around b sweeps from the right side to the left side, CCW
    for k in range(arc_segments + 1):
        ang = theta - 0.5 * math.pi + math.pi * k / arc_segments
        pts.append((bx + radius * math.cos(ang), by + radius * math.sin(ang)))
    for k in range(arc_segments + 1):
        ang = theta + 0.5 * math.pi + math.pi * k / arc_segments
        pts.append((ax + radius * math.cos(ang), ay + radius * math.sin(ang)))
    return np.array(pts, dtype=float)


def polygon_area(poly: np.ndarray) -> float:
    """Shoelace area; positive for CCW vertex order."""
    if len(poly) < 3:
        return 0.0
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def convex_clip(subject: np.ndarray, clip: np.ndarray) -> np.ndarray:
    """Clip a convex CCW polygon against another (Sutherland-Hodgman).

    Returns the intersection polygon, possibly empty.
    """
    output = [tuple(v) for v in subject]
    m = len(clip)
    for i in range(m):
        if not output:
            break
        cx1, cy1 = clip[i]
        cx2, cy2 = clip[(i + 1) % m]
        polygon = output
        output = []
        n = len(polygon)
        for j in range(n):
            sx, sy = polygon[j - 1]
            ex, ey = polygon[j]
            s_in = _orient(cx1, cy1, cx2, cy2, sx, sy) >= 0.0
            e_in = _orient(cx1, cy1, cx2, cy2, ex, ey) >= 0.0
            if e_in:
                if not s_in:
                    output.append(_line_hit(cx1, cy1, cx2, cy2, sx, sy, ex, ey))
                output.append((ex, ey))
            elif s_in:
                output.append(_line_hit(cx1, cy1, cx2, cy2, sx, sy, ex, ey))
    return np.array(output, dtype=float) if output else np.empty((0, 2), dtype=float)


def _line_hit(
    cx1: float, cy1: float, cx2: float, cy2: float,
    sx: float, sy: float, ex: float, ey: float,
) -> tuple[float, float]:
    """Intersection of line c1c2 with segment se, known to cross it."""
    dcx, dcy = cx2 - cx1, cy2 - cy1
    dsx, dsy = ex - sx, ey - sy
    denom = dcx * dsy - dcy * dsx
    t = (dcy * (sx - cx1) - dcx * (sy - cy1)) / denom
    return (sx + t * dsx, sy + t * dsy)


def walls_adjoin(w1: WallSegment, w2: WallSegment, tol: float = ENDPOINT_TOL) -> bool:
    """Whether two walls share an endpoint within ``tol`` meters."""
    for p in (w1.a, w1.b):
        for q in (w2.a, w2.b):
            if math.hypot(p.x - q.x, p.y - q.y) <= tol:
                return True
    return False


def _capsule_bbox(wall: WallSegment, radius: float) -> tuple[float, float, float, float]:
    return (
        min(wall.a.x, wall.b.x) - radius,
        min(wall.a.y, wall.b.y) - radius,
        max(wall.a.x, wall.b.x) + radius,
        max(wall.a.y, wall.b.y) + radius,
    )


def clearance(
    walls: tuple[WallSegment, ...] | list[WallSegment],
    radius: float = DEFAULT_CLEARANCE_RADIUS,
    arc_segments: int = DEFAULT_ARC_SEGMENTS,
) -> float:
    """Total pairwise overlap area between thickened walls, square meters.

    Every wall is dilated by a disc of ``radius`` and each unordered pair
    contributes the area of its polygonal overlap. Pairs that adjoin
    (share an endpoint) are excluded: meeting at corners is normal
    construction, not crowding.
    """
    walls = list(walls)
    capsules: list[np.ndarray | None] = [None] * len(walls)
    total = 0.0
    for i in range(len(walls)):
        bi = _capsule_bbox(walls[i], radius)
        for j in range(i + 1, len(walls)):
            if walls_adjoin(walls[i], walls[j]):
                continue
            bj = _capsule_bbox(walls[j], radius)
            if bi[2] <= bj[0] or bj[2] <= bi[0] or bi[3] <= bj[1] or bj[3] <= bi[1]:
                continue
            if capsules[i] is None:
                capsules[i] = capsule_polygon(walls[i], radius, arc_segments)
            if capsules[j] is None:
                capsules[j] = capsule_polygon(walls[j], radius, arc_segments)
            cut = convex_clip(capsules[i], capsules[j])
            if len(cut) >= 3:
                total += max(polygon_area(cut), 0.0)
    return total


def clearance_penalty(
    walls: tuple[WallSegment, ...] | list[WallSegment],
    radius: float = DEFAULT_CLEARANCE_RADIUS,
    arc_segments: int = DEFAULT_ARC_SEGMENTS,
) -> float:
    """Squared clearance; grows steeply as walls crowd each other."""
    return clearance(walls, radius, arc_segments) ** 2


def wall_length_penalty(new: ArchitecturalGraph, old: ArchitecturalGraph) -> float:
    """Absolute change in total wall length between two layouts."""
    return abs(new.total_wall_length() - old.total_wall_length())
