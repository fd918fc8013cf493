"""Acceptance gate: one test per contract, with stated tolerances.

Each test prints a single PASS line when its contract holds; a failed
assert is the FAIL line. Oracles here are intentionally independent of
the library internals (textbook BFS, Monte-Carlo membership, closed
forms).
"""

from __future__ import annotations

import dataclasses
import json
import math
import time
from collections import deque
from pathlib import Path

import numpy as np

from layoutforge import (
    DiversityConfig,
    Point2,
    TerminationCriteria,
    WallSegment,
    build_forest,
    build_visibility_graph,
    clearance,
    compute_metrics,
    evaluate,
    hierarchical_optimize,
    maximize,
    normalized_distance,
    normalized_mean_degree,
    run_round,
    sample_grid,
    violation_cost,
)
from layoutforge.cli import main as cli_main
from layoutforge.forest import STRATEGIES
from layoutforge.grid import GridSpec

from conftest import empty_room_problem, gap_wall_problem, rect_region, simple_room_problem


def bfs_level_counts(adj: np.ndarray, root: int) -> tuple[int, ...]:
    """Sequential textbook BFS; the reference for every forest strategy."""
    seen = np.zeros(adj.shape[0], dtype=bool)
    seen[root] = True
    frontier = deque([root])
    counts = []
    while frontier:
        counts.append(len(frontier))
        nxt = deque()
        for u in frontier:
            for v in np.flatnonzero(adj[u]):
                if not seen[v]:
                    seen[v] = True
                    nxt.append(v)
        frontier = nxt
    return tuple(counts)


def test_forest_oracle_equivalence():
    started = time.monotonic()
    rng = np.random.default_rng(1234)
    for g in range(100):
        n = int(rng.integers(2, 301))
        density = rng.uniform(0.02, 0.5)
        upper = np.triu(rng.random((n, n)) < density, k=1)
        adj = upper | upper.T
        roots = rng.choice(n, size=min(n, 8), replace=False)
        expected = [bfs_level_counts(adj, r) for r in roots]
        for strategy in STRATEGIES:
            stats = build_forest(adj, roots, strategy)
            got = [stats.for_root(r).level_counts for r in roots]
            assert got == expected, f"graph {g} strategy {strategy} diverged from BFS oracle"
    elapsed = time.monotonic() - started
    assert elapsed < 30.0, f"forest oracle sweep took {elapsed:.1f}s"
    print(f"PASS forest oracle equivalence: 100 graphs x 3 strategies bit-exact in {elapsed:.1f}s")


def test_closed_form_complete_graph_metrics():
    problem = empty_room_problem(size=4.0, resolution=1.0)
    grid = sample_grid(problem.grid, problem.graph.walls, problem.query, problem.reference)
    graph = build_visibility_graph(grid, problem.graph.walls)
    report = compute_metrics(graph, "all")
    v = grid.vertex_count
    assert v == 16
    assert (report.degrees == v - 1).all()
    assert (report.depths == 1.0).all()
    h = -(1 / v) * math.log2(1 / v) - ((v - 1) / v) * math.log2((v - 1) / v)
    assert np.abs(report.entropies - h).max() <= 1e-9
    print(f"PASS closed-form metrics: k={v - 1}, d=1, h within 1e-9 of {h:.9f} on all {v} vertices")


def test_los_work_bound():
    problem = empty_room_problem(size=4.0, resolution=1.0)
    grid = sample_grid(problem.grid, problem.graph.walls, problem.query, problem.reference)
    graph = build_visibility_graph(grid, problem.graph.walls)
    n = grid.vertex_count
    assert graph.los_tests == n * (n - 1) // 2
    print(f"PASS LOS work bound: {graph.los_tests} tests == n(n-1)/2 for n={n}")


def full_region_grid(width: float, height: float, walls=()) -> tuple:
    spec = GridSpec(Point2(0, 0), width, height, 1.0)
    region = rect_region(-1.0, -1.0, width + 1.0, height + 1.0)
    return sample_grid(spec, tuple(walls), region, region)


def test_scaling_shape():
    # doubling the vertex count scales LOS tests by (2n)(2n-1)/(n(n-1))
    small = full_region_grid(4.0, 4.0)
    large = full_region_grid(8.0, 4.0)
    n = small.vertex_count
    assert large.vertex_count == 2 * n
    g_small = build_visibility_graph(small, ())
    g_large = build_visibility_graph(large, ())
    expected = (2 * n) * (2 * n - 1) / (n * (n - 1))
    assert g_large.los_tests / g_small.los_tests == expected

    # wall count enters per-test cost linearly: distant walls never drop
    # vertices, so the counters isolate the K factor
    def distant_walls(k: int) -> tuple[WallSegment, ...]:
        return tuple(
            WallSegment(f"far{i}", Point2(0.0, 50.0 + i), Point2(4.0, 50.0 + i)) for i in range(k)
        )

    for k in (2, 4):
        grid = full_region_grid(4.0, 4.0, distant_walls(k))
        assert grid.vertex_count == n
        g = build_visibility_graph(grid, distant_walls(k))
        assert g.wall_checks == g.los_tests * k
    print(
        f"PASS scaling shape: LOS ratio {g_large.los_tests}/{g_small.los_tests} == "
        f"{expected:.4f}; wall checks == tests x K for K in (2, 4)"
    )


def _segment_dist2(pts: np.ndarray, wall: WallSegment) -> np.ndarray:
    ax, ay, bx, by = wall.a.x, wall.a.y, wall.b.x, wall.b.y
    dx, dy = bx - ax, by - ay
    t = np.clip(((pts[:, 0] - ax) * dx + (pts[:, 1] - ay) * dy) / (dx * dx + dy * dy), 0.0, 1.0)
    return (pts[:, 0] - (ax + t * dx)) ** 2 + (pts[:, 1] - (ay + t * dy)) ** 2


def monte_carlo_overlap(w1: WallSegment, w2: WallSegment, radius: float, rng, samples: int) -> float:
    """Membership-sampling oracle over the intersection of capsule boxes."""

    def box(w: WallSegment):
        return (
            min(w.a.x, w.b.x) - radius,
            min(w.a.y, w.b.y) - radius,
            max(w.a.x, w.b.x) + radius,
            max(w.a.y, w.b.y) + radius,
        )

    b1, b2 = box(w1), box(w2)
    lo = (max(b1[0], b2[0]), max(b1[1], b2[1]))
    hi = (min(b1[2], b2[2]), min(b1[3], b2[3]))
    if lo[0] >= hi[0] or lo[1] >= hi[1]:
        return 0.0
    area = (hi[0] - lo[0]) * (hi[1] - lo[1])
    pts = rng.uniform(lo, hi, size=(samples, 2))
    r2 = radius * radius
    inside = (_segment_dist2(pts, w1) <= r2) & (_segment_dist2(pts, w2) <= r2)
    return area * float(inside.mean())


def test_clearance_matches_monte_carlo():
    rng = np.random.default_rng(42)
    radius = 0.5
    results = []
    for k in range(10):
        c = rng.uniform(0.0, 4.0, size=8)
        w1 = WallSegment("a", Point2(c[0], c[1]), Point2(c[2], c[3]))
        w2 = WallSegment("b", Point2(c[4], c[5]), Point2(c[6], c[7]))
        analytic = clearance((w1, w2), radius, arc_segments=64)
        oracle = monte_carlo_overlap(w1, w2, radius, rng, samples=1_000_000)
        tolerance = max(0.01 * oracle, 1e-3)
        error = abs(analytic - oracle)
        assert error <= tolerance, (
            f"config {k}: clearance {analytic:.6f} vs oracle {oracle:.6f}, "
            f"error {error:.2e} > {tolerance:.2e}"
        )
        results.append(error)
    print(
        f"PASS clearance oracle: 10 configs within 1% rel / 1e-3 m^2 abs "
        f"(worst error {max(results):.2e} m^2)"
    )


def test_cma_sphere_convergence():
    started = time.monotonic()
    target = np.array([0.7, -1.3])
    fn = lambda p: -float(((p - target) ** 2).sum())
    lam = 6  # 4 + floor(3 ln 2)
    criteria = TerminationCriteria(max_evaluations=200 * lam, improvement_floor=-1.0)
    state, history = maximize(
        fn, np.zeros(2), 0.5, np.full(2, -5.0), np.full(2, 5.0), criteria, np.random.default_rng(3)
    )
    elapsed = time.monotonic() - started
    error = -state.best_value
    assert len(history) <= 200
    assert error < 1e-6, f"best-ever error {error:.2e} after {len(history)} generations"
    assert elapsed < 5.0, f"sphere run took {elapsed:.1f}s"
    crossed = next(i + 1 for i, v in enumerate(history) if -v < 1e-6)
    print(
        f"PASS CMA sphere: error {error:.2e} (crossed 1e-6 at generation {crossed}) "
        f"in {elapsed:.2f}s"
    )


def test_hierarchy_feasibility_and_pin():
    def two_quadratic(p: np.ndarray) -> np.ndarray:
        x = float(p[0])
        return np.array([-((x + 1.0) ** 2), -((x - 1.0) ** 2)])

    criteria = TerminationCriteria(max_evaluations=8000, improvement_floor=-1.0)
    result = hierarchical_optimize(
        two_quadratic,
        np.zeros(1),
        np.full(1, -5.0),
        np.full(1, 5.0),
        n_members=3,
        criteria=criteria,
        handover=1.0,
        sigma0=1.0,
        rng=np.random.default_rng(7),
    )
    worst_violation = 0.0
    worst_pin = 0.0
    for member in result.members:
        worst_violation = max(worst_violation, violation_cost(two_quadratic(member), result.thresholds))
        # full handover pins every member at stage 1's optimum x = -1
        worst_pin = max(worst_pin, abs(float(member[0]) + 1.0))
    assert worst_violation < 1e-6
    assert worst_pin < 1e-3
    print(
        f"PASS hierarchy feasibility: violations <= {worst_violation:.2e} < 1e-6, "
        f"z=1.0 pin error {worst_pin:.2e} < 1e-3"
    )


def test_diversity_contract():
    started = time.monotonic()
    problem = simple_room_problem()  # 0.5 cells/m
    grid = sample_grid(problem.grid, problem.graph.walls, problem.query, problem.reference)
    assert grid.vertex_count <= 400

    default = evaluate(problem, np.zeros(2))
    result = run_round(problem, seed=0)  # full default config, 5 members
    elapsed = time.monotonic() - started
    assert elapsed < 120.0, f"diversity round took {elapsed:.1f}s"

    lower = problem.params.lower_bounds()
    upper = problem.params.upper_bounds()
    d_min = DiversityConfig().min_distance(problem.params.dimension)
    members = [m.params for m in result.members]
    assert len(members) == 5
    min_gap = min(
        normalized_distance(members[i], members[j], lower, upper)
        for i in range(5)
        for j in range(i + 1, 5)
    )
    assert min_gap >= d_min - 1e-6, f"min pairwise distance {min_gap:.4f} < {d_min:.4f}"
    worst_combined = min(m.evaluation.combined for m in result.members)
    assert worst_combined >= default.combined, (
        f"member combined {worst_combined:.4f} below default {default.combined:.4f}"
    )
    print(
        f"PASS diversity contract: min gap {min_gap:.4f} >= d_min {d_min:.4f}, "
        f"all combined >= default ({worst_combined:.4f} >= {default.combined:.4f}), "
        f"{elapsed:.1f}s on {grid.vertex_count} vertices"
    )


def test_sensitivity_stabilization():
    base = gap_wall_problem()
    values = []
    for resolution in (0.5, 1.0, 2.0):
        problem = dataclasses.replace(
            base, grid=dataclasses.replace(base.grid, resolution=resolution)
        )
        ev = evaluate(problem, np.zeros(0), roots="query", keep_report=True)
        values.append(normalized_mean_degree(ev.report))
    first = abs(values[0] - values[1])
    second = abs(values[1] - values[2])
    assert second < first, f"normalized K steps {first:.5f} -> {second:.5f} did not shrink"
    print(
        f"PASS sensitivity stabilization: |dK| {first:.5f} -> {second:.5f} "
        f"shrinks across 0.5 -> 1.0 -> 2.0 cells/m"
    )


def test_determinism_byte_identical_manifests(tmp_path: Path):
    layout = {
        "schema_version": "1",
        "walls": [
            {"id": "w0", "a": [0.0, 0.0], "b": [4.0, 0.0]},
            {"id": "w1", "a": [4.0, 0.0], "b": [4.0, 4.0]},
            {"id": "w2", "a": [4.0, 4.0], "b": [0.0, 4.0]},
            {"id": "w3", "a": [0.0, 4.0], "b": [0.0, 0.0]},
            {"id": "bar", "a": [1.0, 2.0], "b": [3.0, 2.0]},
        ],
        "groups": [{"id": "g", "walls": ["bar"], "pivot": [2.0, 2.0]}],
        "params": [{"group": "g", "kind": "translation-y", "lower": -1.5, "upper": 1.5}],
        "grid": {"origin": [0.0, 0.0], "width": 4.0, "height": 4.0, "resolution": 1.0},
        "regions": {
            "query": [[0.01, 0.01], [3.99, 0.01], [3.99, 3.99], [0.01, 3.99]],
            "reference": [[0.01, 0.01], [3.99, 0.01], [3.99, 3.99], [0.01, 3.99]],
        },
    }
    config = {
        "members": 2,
        "objectives": [{"metric": "degree"}],
        "stage_evaluations": 60,
        "diversity_evaluations": 120,
    }
    layout_path = tmp_path / "layout.json"
    layout_path.write_text(json.dumps(layout))
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config))

    outputs = []
    for run in ("a", "b"):
        out = tmp_path / run
        code = cli_main(
            [
                "optimize",
                "--layout", str(layout_path),
                "--config", str(config_path),
                "--seed", "13",
                "--out", str(out),
            ]
        )
        assert code == 0
        outputs.append(out)
    manifest_a = (outputs[0] / "manifest.json").read_bytes()
    manifest_b = (outputs[1] / "manifest.json").read_bytes()
    assert manifest_a == manifest_b
    for name in ("member_00.json", "member_01.json", "member_00.csv"):
        assert (outputs[0] / name).read_bytes() == (outputs[1] / name).read_bytes()
    print(f"PASS determinism: seed 13 reruns byte-identical ({len(manifest_a)} manifest bytes)")
