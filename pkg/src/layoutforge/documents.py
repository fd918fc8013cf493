"""JSON documents: layout schema, heatmap exports, run manifests.

The layout document is the single interchange format between the CLI,
the HTTP service, and the browser studio. Serialization is canonical
(sorted keys, stable float repr, no timestamps) so that reruns with the
same seed produce byte-identical files.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from typing import Any

from .diversity import DiversityConfig
from .errors import SchemaError
from .geometry import (
    ArchitecturalGraph,
    ElementGroup,
    ParamBound,
    ParamKind,
    ParamSpec,
    Point2,
    WallSegment,
)
from .grid import GridSpec, Region
from .metrics import MetricsReport, combined_values
from .pipeline import (
    CandidateEvaluation,
    DesignProblem,
    ObjectiveSpec,
    OptimizationConfig,
    PenaltyConfig,
    RoundResult,
    metric_value,
)

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class LayoutDocument:
    """Validated in-memory form of a layout JSON document."""

    name: str
    graph: ArchitecturalGraph
    params: ParamSpec
    grid: GridSpec
    query: Region
    reference: Region

    def to_problem(self, penalties: PenaltyConfig | None = None) -> DesignProblem:
        return DesignProblem(
            graph=self.graph,
            params=self.params,
            grid=self.grid,
            query=self.query,
            reference=self.reference,
            penalties=penalties or PenaltyConfig(),
        )


def _require(data: dict, key: str, path: str) -> Any:
    if key not in data:
        raise SchemaError(f"missing field {key!r}", path)
    return data[key]


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError("expected a number", path)
    if not math.isfinite(value):
        raise SchemaError("number must be finite", path)
    return float(value)


def _point(value: Any, path: str) -> Point2:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SchemaError("expected [x, y]", path)
    return Point2(_number(value[0], f"{path}[0]"), _number(value[1], f"{path}[1]"))


def _string(value: Any, path: str) -> str:
    if not isinstance(value, str) or not value:
        raise SchemaError("expected a non-empty string", path)
    return value


def _polygon(value: Any, path: str) -> Region:
    if not isinstance(value, list) or len(value) < 3:
        raise SchemaError("expected a polygon with at least 3 vertices", path)
    return Region(tuple(_point(v, f"{path}[{i}]") for i, v in enumerate(value)))


def parse_layout(data: dict | str) -> LayoutDocument:
    """Validate a layout document, raising SchemaError with a field path."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("document root must be an object")
    version = _require(data, "schema_version", "")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {version!r}", "schema_version")

    walls = []
    raw_walls = _require(data, "walls", "")
    if not isinstance(raw_walls, list):
        raise SchemaError("expected a list", "walls")
    for i, w in enumerate(raw_walls):
        path = f"walls[{i}]"
        if not isinstance(w, dict):
            raise SchemaError("expected an object", path)
        try:
            walls.append(
                WallSegment(
                    id=_string(_require(w, "id", path), f"{path}.id"),
                    a=_point(_require(w, "a", path), f"{path}.a"),
                    b=_point(_require(w, "b", path), f"{path}.b"),
                )
            )
        except ValueError as exc:
            raise SchemaError(str(exc), path) from exc

    groups = []
    for i, g in enumerate(data.get("groups", [])):
        path = f"groups[{i}]"
        if not isinstance(g, dict):
            raise SchemaError("expected an object", path)
        raw_ids = _require(g, "walls", path)
        if not isinstance(raw_ids, list) or not raw_ids:
            raise SchemaError("expected a non-empty list of wall ids", f"{path}.walls")
        groups.append(
            ElementGroup(
                id=_string(_require(g, "id", path), f"{path}.id"),
                wall_ids=tuple(_string(v, f"{path}.walls[{k}]") for k, v in enumerate(raw_ids)),
                pivot=_point(_require(g, "pivot", path), f"{path}.pivot"),
            )
        )

    entries = []
    for i, p in enumerate(data.get("params", [])):
        path = f"params[{i}]"
        if not isinstance(p, dict):
            raise SchemaError("expected an object", path)
        kind_raw = _string(_require(p, "kind", path), f"{path}.kind")
        try:
            kind = ParamKind(kind_raw)
        except ValueError as exc:
            raise SchemaError(f"unknown kind {kind_raw!r}", f"{path}.kind") from exc
        try:
            entries.append(
                ParamBound(
                    group_id=_string(_require(p, "group", path), f"{path}.group"),
                    kind=kind,
                    lower=_number(_require(p, "lower", path), f"{path}.lower"),
                    upper=_number(_require(p, "upper", path), f"{path}.upper"),
                )
            )
        except ValueError as exc:
            raise SchemaError(str(exc), path) from exc

    try:
        graph = ArchitecturalGraph(tuple(walls), tuple(groups))
    except ValueError as exc:
        raise SchemaError(str(exc), "walls/groups") from exc
    group_ids = {g.id for g in groups}
    for i, e in enumerate(entries):
        if e.group_id not in group_ids:
            raise SchemaError(f"unknown group {e.group_id!r}", f"params[{i}].group")

    raw_grid = _require(data, "grid", "")
    if not isinstance(raw_grid, dict):
        raise SchemaError("expected an object", "grid")
    try:
        grid = GridSpec(
            origin=_point(_require(raw_grid, "origin", "grid"), "grid.origin"),
            width=_number(_require(raw_grid, "width", "grid"), "grid.width"),
            height=_number(_require(raw_grid, "height", "grid"), "grid.height"),
            resolution=_number(_require(raw_grid, "resolution", "grid"), "grid.resolution"),
        )
    except ValueError as exc:
        raise SchemaError(str(exc), "grid") from exc

    raw_regions = _require(data, "regions", "")
    if not isinstance(raw_regions, dict):
        raise SchemaError("expected an object", "regions")
    query = _polygon(_require(raw_regions, "query", "regions"), "regions.query")
    reference = _polygon(_require(raw_regions, "reference", "regions"), "regions.reference")

    name = data.get("name", "")
    if name and not isinstance(name, str):
        raise SchemaError("expected a string", "name")

    return LayoutDocument(
        name=name or "",
        graph=graph,
        params=ParamSpec(tuple(entries)),
        grid=grid,
        query=query,
        reference=reference,
    )


def serialize_layout(doc: LayoutDocument) -> dict:
    """Plain-JSON form of a layout; inverse of parse_layout."""
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "walls": [
            {"id": w.id, "a": [w.a.x, w.a.y], "b": [w.b.x, w.b.y]} for w in doc.graph.walls
        ],
        "groups": [
            {"id": g.id, "walls": list(g.wall_ids), "pivot": [g.pivot.x, g.pivot.y]}
            for g in doc.graph.groups
        ],
        "params": [
            {
                "group": e.group_id,
                "kind": e.kind.value,
                "lower": e.lower,
                "upper": e.upper,
            }
            for e in doc.params.entries
        ],
        "grid": {
            "origin": [doc.grid.origin.x, doc.grid.origin.y],
            "width": doc.grid.width,
            "height": doc.grid.height,
            "resolution": doc.grid.resolution,
        },
        "regions": {
            "query": [[v.x, v.y] for v in doc.query.polygon],
            "reference": [[v.x, v.y] for v in doc.reference.polygon],
        },
    }
    if doc.name:
        out["name"] = doc.name
    return out


def layout_to_json(doc: LayoutDocument) -> str:
    return canonical_json(serialize_layout(doc))


def with_graph(doc: LayoutDocument, graph: ArchitecturalGraph) -> LayoutDocument:
    """The same document with its walls (and carried pivots) replaced."""
    return dataclasses.replace(doc, graph=graph)


def canonical_json(data: Any) -> str:
    """Stable JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, allow_nan=False) + "\n"


def heatmap_document(report: MetricsReport, pitch: float) -> dict:
    """Per-vertex metric grid for rendering: parallel coordinate arrays."""
    combined = combined_values(report)
    return {
        "schema_version": SCHEMA_VERSION,
        "pitch": pitch,
        "x": [float(v) for v in report.points[:, 0]],
        "y": [float(v) for v in report.points[:, 1]],
        "query": [bool(v) for v in report.query_mask],
        "reference": [bool(v) for v in report.reference_mask],
        "degree": [int(v) for v in report.degrees],
        "depth": [float(v) for v in report.depths],
        "entropy": [float(v) for v in report.entropies],
        "combined": [float(v) for v in combined],
        "aggregates": {
            "degree": report.mean_degree,
            "depth": report.mean_depth,
            "entropy": report.mean_entropy,
        },
        "vertex_count": report.vertex_count,
    }


def heatmap_csv(report: MetricsReport) -> str:
    """Rows of x,y,k,d,h,combined for every vertex."""
    combined = combined_values(report)
    lines = ["x,y,k,d,h,combined"]
    for i in range(report.vertex_count):
        lines.append(
            f"{float(report.points[i, 0])!r},{float(report.points[i, 1])!r},"
            f"{int(report.degrees[i])},{float(report.depths[i])!r},"
            f"{float(report.entropies[i])!r},{float(combined[i])!r}"
        )
    return "\n".join(lines) + "\n"


def evaluation_summary(ev: CandidateEvaluation, config: OptimizationConfig) -> dict:
    return {
        "degree": ev.mean_degree,
        "depth": ev.mean_depth,
        "entropy": ev.mean_entropy,
        "clearance_area": ev.clearance_area,
        "penalty": ev.penalty,
        "combined": ev.combined,
        "vertex_count": ev.vertex_count,
        "empty_region": ev.empty_region,
        "objectives": [metric_value(ev, s) for s in config.objectives],
    }


def config_to_dict(config: OptimizationConfig) -> dict:
    data = dataclasses.asdict(config)
    data["objectives"] = [
        {"metric": s.metric, "handover": s.handover, "invert": s.invert}
        for s in config.objectives
    ]
    return data


def parse_config(data: dict, path: str = "config") -> OptimizationConfig:
    """Build an OptimizationConfig from a partial JSON object."""
    if not isinstance(data, dict):
        raise SchemaError("expected an object", path)
    kwargs: dict[str, Any] = {}
    simple = {
        "members": int,
        "stage_evaluations": int,
        "diversity_evaluations": int,
        "stagnation_window": int,
        "target_fraction": float,
        "sigma0": float,
        "population": int,
        "threshold_weight": float,
    }
    for key, cast in simple.items():
        if key in data and data[key] is not None:
            try:
                kwargs[key] = cast(data[key])
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"bad value for {key}", f"{path}.{key}") from exc
    if "objectives" in data:
        specs = []
        if not isinstance(data["objectives"], list) or not data["objectives"]:
            raise SchemaError("expected a non-empty list", f"{path}.objectives")
        for i, o in enumerate(data["objectives"]):
            opath = f"{path}.objectives[{i}]"
            if not isinstance(o, dict):
                raise SchemaError("expected an object", opath)
            metric = _require(o, "metric", opath)
            if metric not in ("penalty", "degree", "depth", "entropy"):
                raise SchemaError(f"unknown metric {metric!r}", f"{opath}.metric")
            handover = _number(o.get("handover", 0.7), f"{opath}.handover")
            if not 0.0 <= handover <= 1.0:
                raise SchemaError("handover must lie in [0, 1]", f"{opath}.handover")
            specs.append(ObjectiveSpec(metric, handover, bool(o.get("invert", False))))
        kwargs["objectives"] = tuple(specs)
    if "diversity" in data:
        d = data["diversity"]
        if not isinstance(d, dict):
            raise SchemaError("expected an object", f"{path}.diversity")
        kwargs["diversity"] = DiversityConfig(
            spread_weight=_number(d.get("spread_weight", 1.0), f"{path}.diversity.spread_weight"),
            clustering_weight=_number(
                d.get("clustering_weight", 100.0), f"{path}.diversity.clustering_weight"
            ),
            d_min=None if d.get("d_min") is None else _number(d["d_min"], f"{path}.diversity.d_min"),
        )
    try:
        return OptimizationConfig(**kwargs)
    except TypeError as exc:
        raise SchemaError(str(exc), path) from exc


def parse_penalties(data: dict, path: str = "penalties") -> PenaltyConfig:
    if not isinstance(data, dict):
        raise SchemaError("expected an object", path)
    kwargs: dict[str, Any] = {}
    fields = {
        "clearance_enabled": bool,
        "clearance_weight": float,
        "clearance_radius": float,
        "arc_segments": int,
        "wall_length_enabled": bool,
        "wall_length_weight": float,
        "empty_region_penalty": float,
    }
    for key, cast in fields.items():
        if key in data:
            try:
                kwargs[key] = cast(data[key])
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"bad value for {key}", f"{path}.{key}") from exc
    return PenaltyConfig(**kwargs)


def round_manifest(result: RoundResult, member_files: list[dict[str, str]]) -> dict:
    """Deterministic summary of a round; file names, no paths or times."""
    cfg = result.config
    return {
        "schema_version": SCHEMA_VERSION,
        "seed": result.seed,
        "evaluations": result.evaluations,
        "config": config_to_dict(cfg),
        "default": evaluation_summary(result.default, cfg),
        "stages": [
            {
                "index": s.index,
                "objective": s.label,
                "evaluations": s.evaluations,
                "generations": s.generations,
                "start_value": s.start_value,
                "optimum_value": s.optimum_value,
                "lower_bound": s.lower_bound,
            }
            for s in result.hierarchy.stages
        ],
        "thresholds": [
            {
                "objective_index": t.objective_index,
                "lower": None if math.isinf(t.lower) else t.lower,
                "upper": None if math.isinf(t.upper) else t.upper,
            }
            for t in result.hierarchy.thresholds
        ],
        "members": [
            {
                "index": m.index,
                "params": [float(v) for v in m.params],
                "summary": evaluation_summary(m.evaluation, cfg),
                "files": member_files[m.index],
            }
            for m in result.members
        ],
    }
