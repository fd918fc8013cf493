"""Command-line entry points: analyze a layout, run an optimization round.

Exit codes: 0 success, 2 document or argument parse error, 3 empty
analysis region, 4 file I/O error, 5 optimization failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from .documents import (
    LayoutDocument,
    canonical_json,
    heatmap_csv,
    heatmap_document,
    parse_config,
    parse_layout,
    parse_penalties,
    round_manifest,
    serialize_layout,
    with_graph,
)
from .errors import EmptyRegionError, LayoutForgeError, OptimizationError, SchemaError
from .pipeline import OptimizationConfig, evaluate, run_round

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_EMPTY_REGION = 3
EXIT_IO = 4
EXIT_OPTIMIZATION = 5


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="layoutforge",
        description="Visibility analysis and diversity optimization of floor plans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="compute metric heatmaps for a layout")
    analyze.add_argument("--layout", required=True, help="layout JSON file")
    analyze.add_argument("--resolution", type=float, help="override grid resolution, cells per meter")
    analyze.add_argument("--out", required=True, help="output directory")

    optimize = sub.add_parser("optimize", help="run one optimization round")
    optimize.add_argument("--layout", required=True, help="layout JSON file")
    optimize.add_argument("--members", type=int, help="size of the returned diversity set")
    optimize.add_argument("--seed", type=int, default=0, help="random seed")
    optimize.add_argument("--config", help="optional JSON config file")
    optimize.add_argument("--out", required=True, help="output directory")
    return parser


def _load_layout(path: str) -> LayoutDocument:
    text = Path(path).read_text()
    return parse_layout(text)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def cmd_analyze(args: argparse.Namespace) -> int:
    doc = _load_layout(args.layout)
    if args.resolution is not None:
        if args.resolution <= 0:
            raise SchemaError("resolution must be positive", "resolution")
        doc = dataclasses.replace(
            doc, grid=dataclasses.replace(doc.grid, resolution=args.resolution)
        )
    problem = doc.to_problem()
    ev = evaluate(problem, np.zeros(problem.params.dimension), roots="all", keep_report=True)
    if ev.empty_region or ev.report is None:
        raise EmptyRegionError("analysis regions contain no vertices")

    out = Path(args.out)
    _write(out / "heatmap.csv", heatmap_csv(ev.report))
    _write(out / "heatmap.json", canonical_json(heatmap_document(ev.report, doc.grid.pitch)))
    summary = {
        "degree": ev.mean_degree,
        "depth": ev.mean_depth,
        "entropy": ev.mean_entropy,
        "combined": ev.combined,
        "clearance_area": ev.clearance_area,
        "penalty": ev.penalty,
        "vertex_count": ev.vertex_count,
    }
    _write(out / "summary.json", canonical_json(summary))
    print(
        f"analyzed {args.layout}: {ev.vertex_count} vertices, "
        f"K={ev.mean_degree:.4f} D={ev.mean_depth:.4f} H={ev.mean_entropy:.4f}"
    )
    return EXIT_OK


def cmd_optimize(args: argparse.Namespace) -> int:
    doc = _load_layout(args.layout)
    config = OptimizationConfig()
    penalties = None
    if args.config:
        raw = json.loads(Path(args.config).read_text())
        if not isinstance(raw, dict):
            raise SchemaError("config root must be an object", "config")
        if "penalties" in raw:
            penalties = parse_penalties(raw["penalties"])
        config = parse_config({k: v for k, v in raw.items() if k != "penalties"})
    if args.members is not None:
        if args.members < 1:
            raise SchemaError("members must be at least 1", "members")
        config = dataclasses.replace(config, members=args.members)

    problem = doc.to_problem(penalties)
    result = run_round(problem, config, seed=args.seed)

    out = Path(args.out)
    member_files = []
    for m in result.members:
        stem = f"member_{m.index:02d}"
        files = {
            "layout": f"{stem}.json",
            "heatmap_json": f"{stem}.heatmap.json",
            "heatmap_csv": f"{stem}.csv",
        }
        _write(out / files["layout"], canonical_json(serialize_layout(with_graph(doc, m.graph))))
        if m.evaluation.report is not None:
            _write(
                out / files["heatmap_json"],
                canonical_json(heatmap_document(m.evaluation.report, doc.grid.pitch)),
            )
            _write(out / files["heatmap_csv"], heatmap_csv(m.evaluation.report))
        member_files.append(files)

    manifest = round_manifest(result, member_files)
    _write(out / "manifest.json", canonical_json(manifest))
    print(
        f"optimized {args.layout}: {len(result.members)} members, "
        f"{result.evaluations} evaluations, seed {result.seed}"
    )
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        return cmd_optimize(args)
    except (SchemaError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EmptyRegionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY_REGION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (OptimizationError, LayoutForgeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OPTIMIZATION


if __name__ == "__main__":
    sys.exit(main())
