/**
 * Wire types shared with the layoutforge HTTP service. Every shape here
 * mirrors a JSON document produced or consumed by the server; the studio
 * never invents metric values of its own.
 */

/** [x, y] in meters, matching the layout document encoding. */
export type Vec2 = [number, number];

export type ParamKind = 'translation-x' | 'translation-y' | 'rotation';

export interface WallJson {
  id: string;
  a: Vec2;
  b: Vec2;
}

export interface GroupJson {
  id: string;
  walls: string[];
  pivot: Vec2;
}

export interface ParamJson {
  group: string;
  kind: ParamKind;
  lower: number;
  upper: number;
}

export interface GridJson {
  origin: Vec2;
  width: number;
  height: number;
  /** cells per meter; vertex pitch is 1/resolution */
  resolution: number;
}

export interface RegionsJson {
  query: Vec2[];
  reference: Vec2[];
}

export interface LayoutDocument {
  schema_version: string;
  name?: string;
  walls: WallJson[];
  groups?: GroupJson[];
  params?: ParamJson[];
  grid: GridJson;
  regions: RegionsJson;
}

/** Aggregate metrics as returned by POST /analyze. */
export interface AnalyzeSummary {
  degree: number;
  depth: number;
  entropy: number;
  combined: number;
  clearance_area: number;
  penalty: number;
  vertex_count: number;
}

/** Per-vertex metric grid: parallel coordinate arrays. */
export interface HeatmapDocument {
  schema_version: string;
  pitch: number;
  x: number[];
  y: number[];
  query: boolean[];
  reference: boolean[];
  degree: number[];
  depth: number[];
  entropy: number[];
  combined: number[];
  aggregates: { degree: number; depth: number; entropy: number };
  vertex_count: number;
}

export type HeatmapMetric = 'degree' | 'depth' | 'entropy' | 'combined';

export interface AnalyzeResponse {
  summary: AnalyzeSummary;
  heatmap: HeatmapDocument;
}

export type JobStatus = 'queued' | 'running' | 'done' | 'failed' | 'cancelled';

export interface JobView {
  job_id: string;
  layout_id: string;
  seed: number;
  status: JobStatus;
  progress: { stage: string; evaluations: number };
  error?: string;
  member_count?: number;
}

/** Member summary as stored in the round manifest and member entries. */
export interface MemberSummary {
  degree: number;
  depth: number;
  entropy: number;
  clearance_area: number;
  penalty: number;
  combined: number;
  vertex_count: number;
  empty_region: boolean;
  objectives: number[];
}

export interface MemberEntry {
  index: number;
  params: number[];
  summary: MemberSummary;
  layout: LayoutDocument;
  heatmap?: HeatmapDocument;
}

export interface ManifestMember {
  index: number;
  params: number[];
  summary: MemberSummary;
  files: Record<string, string>;
}

export interface RoundManifest {
  schema_version: string;
  seed: number;
  evaluations: number;
  config: Record<string, unknown>;
  default: MemberSummary & Record<string, unknown>;
  thresholds: unknown[];
  stages: unknown[];
  members: ManifestMember[];
}

export interface JobRequest {
  layout_id: string;
  seed?: number;
  members?: number;
  config?: Record<string, unknown>;
  penalties?: Record<string, unknown>;
}

export interface RoundAcceptResponse {
  layout_id: string;
  document: LayoutDocument;
  source_job: string;
}
