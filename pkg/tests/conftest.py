"""Shared builders for layout fixtures used across the suite."""

from __future__ import annotations

import pytest

from layoutforge import (
    ArchitecturalGraph,
    DesignProblem,
    ElementGroup,
    GridSpec,
    ParamBound,
    ParamKind,
    ParamSpec,
    Point2,
    Region,
    WallSegment,
)


def box_walls(x0: float, y0: float, x1: float, y1: float, prefix: str = "b") -> tuple[WallSegment, ...]:
    """Four perimeter walls of an axis-aligned rectangle."""
    corners = [Point2(x0, y0), Point2(x1, y0), Point2(x1, y1), Point2(x0, y1)]
    return tuple(
        WallSegment(f"{prefix}{i}", corners[i], corners[(i + 1) % 4]) for i in range(4)
    )


def rect_region(x0: float, y0: float, x1: float, y1: float) -> Region:
    return Region((Point2(x0, y0), Point2(x1, y0), Point2(x1, y1), Point2(x0, y1)))


def empty_room_problem(size: float = 4.0, resolution: float = 0.5) -> DesignProblem:
    """A bare rectangular room; every vertex is both query and reference."""
    walls = box_walls(0, 0, size, size)
    inset = rect_region(0.01, 0.01, size - 0.01, size - 0.01)
    return DesignProblem(
        graph=ArchitecturalGraph(walls),
        params=ParamSpec(()),
        grid=GridSpec(Point2(0, 0), size, size, resolution),
        query=inset,
        reference=inset,
    )


def simple_room_problem(resolution: float = 0.5) -> DesignProblem:
    """10x10 room with one movable interior wall.

    The wall starts dead center where it blocks the most sight lines;
    translating it toward the boundary opens the room up. At the default
    resolution the lattice has 25 cells and the centered wall swallows
    one, leaving 24 vertices.
    """
    walls = box_walls(0, 0, 10, 10) + (
        WallSegment("mid", Point2(3.5, 5.0), Point2(6.5, 5.0)),
    )
    graph = ArchitecturalGraph(
        walls,
        (ElementGroup("mover", ("mid",), Point2(5.0, 5.0)),),
    )
    params = ParamSpec(
        (
            ParamBound("mover", ParamKind.TRANSLATION_X, -3.0, 3.0),
            ParamBound("mover", ParamKind.TRANSLATION_Y, -4.0, 4.0),
        )
    )
    room = rect_region(0.01, 0.01, 9.99, 9.99)
    return DesignProblem(
        graph=graph,
        params=params,
        grid=GridSpec(Point2(0, 0), 10, 10, resolution),
        query=room,
        reference=room,
    )


def gap_wall_problem() -> DesignProblem:
    """6x6 room split by a wall with a gap between x=2.4 and x=3.6."""
    walls = box_walls(0, 0, 6, 6) + (
        WallSegment("left", Point2(0.0, 3.0), Point2(2.4, 3.0)),
        WallSegment("right", Point2(3.6, 3.0), Point2(6.0, 3.0)),
    )
    room = rect_region(0.01, 0.01, 5.99, 5.99)
    return DesignProblem(
        graph=ArchitecturalGraph(walls),
        params=ParamSpec(()),
        grid=GridSpec(Point2(0, 0), 6, 6, 1.0),
        query=room,
        reference=room,
    )


@pytest.fixture
def empty_room() -> DesignProblem:
    return empty_room_problem()


@pytest.fixture
def simple_room() -> DesignProblem:
    return simple_room_problem()


@pytest.fixture
def gap_wall() -> DesignProblem:
    return gap_wall_problem()
