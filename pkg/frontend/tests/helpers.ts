/**
 * Shared test scaffolding: a small two-group plan and an in-memory fetch
 * stub that implements the service endpoints the studio talks to. The
 * stub is wired through the real ApiClient so request/response encoding
 * and error mapping are exercised, not bypassed.
 */

import { ApiClient } from '../src/api';
import type {
  AnalyzeSummary,
  HeatmapDocument,
  JobView,
  LayoutDocument,
  ManifestMember,
  MemberEntry,
  MemberSummary,
  RoundManifest,
} from '../src/types';

export function sampleDocument(): LayoutDocument {
  return {
    schema_version: '1',
    name: 'test plan',
    walls: [
      { id: 'south', a: [0, 0], b: [8, 0] },
      { id: 'north', a: [0, 6], b: [8, 6] },
      { id: 'divider', a: [4, 0], b: [4, 4] },
      { id: 'shelf', a: [6, 3], b: [6, 6] },
    ],
    groups: [
      { id: 'kitchen', walls: ['divider'], pivot: [4, 2] },
      { id: 'storage', walls: ['shelf'], pivot: [6, 4.5] },
    ],
    params: [
      { group: 'kitchen', kind: 'translation-x', lower: -2, upper: 2 },
      { group: 'storage', kind: 'translation-y', lower: -1, upper: 1 },
    ],
    grid: { origin: [0, 0], width: 8, height: 6, resolution: 1 },
    regions: {
      query: [[0.1, 0.1], [3, 0.1], [3, 3], [0.1, 3]],
      reference: [[0, 0], [8, 0], [8, 6], [0, 6]],
    },
  };
}

function summaryFor(index: number): MemberSummary {
  return {
    degree: 10 + index,
    depth: 2 - index * 0.1,
    entropy: 1 + index * 0.05,
    clearance_area: 0,
    penalty: 0.5,
    combined: 0.8 + index * 0.01,
    vertex_count: 48,
    empty_region: false,
    objectives: [-0.5, 10 + index],
  };
}

function heatmapFor(): HeatmapDocument {
  return {
    schema_version: '1',
    pitch: 1,
    x: [0.5, 1.5],
    y: [0.5, 0.5],
    query: [true, false],
    reference: [true, true],
    degree: [3, 4],
    depth: [1, 1.5],
    entropy: [0.9, 1.1],
    combined: [0.4, 0.5],
    aggregates: { degree: 3, depth: 1, entropy: 0.9 },
    vertex_count: 2,
  };
}

export interface FakeServiceState {
  layouts: Map<string, LayoutDocument>;
  jobs: Map<string, { view: JobView; pollsUntilDone: number; layout: LayoutDocument }>;
  requests: string[];
  memberCount: number;
}

/**
 * Minimal service double: layouts stored by id, jobs that report
 * `running` for a configurable number of polls before `done`, members
 * derived from the job's layout with per-index parameter shifts.
 */
export function fakeService(pollsUntilDone = 2): { client: ApiClient; state: FakeServiceState } {
  const state: FakeServiceState = {
    layouts: new Map(),
    jobs: new Map(),
    requests: [],
    memberCount: 3,
  };
  let nextId = 1;
  const mint = (prefix: string) => `${prefix}-${nextId++}`;

  const json = (status: number, body: unknown) =>
    new Response(JSON.stringify(body), {
      status,
      headers: { 'Content-Type': 'application/json' },
    });
  const error = (status: number, message: string, path?: string) =>
    json(status, { error: path ? { message, path } : { message } });

  const memberEntry = (layout: LayoutDocument, index: number): MemberEntry => {
    const shifted = JSON.parse(JSON.stringify(layout)) as LayoutDocument;
    shifted.name = `member ${index}`;
    return {
      index,
      params: [index * 0.5, -index * 0.25],
      summary: summaryFor(index),
      layout: shifted,
      heatmap: heatmapFor(),
    };
  };

  const manifestFor = (jobId: string, layout: LayoutDocument): RoundManifest => {
    const members: ManifestMember[] = [];
    for (let k = 0; k < state.memberCount; k++) {
      const entry = memberEntry(layout, k);
      members.push({ index: k, params: entry.params, summary: entry.summary, files: {} });
    }
    return {
      schema_version: '1',
      seed: 0,
      evaluations: 123,
      config: {},
      default: { ...summaryFor(0), combined: 0.5 },
      thresholds: [],
      stages: [],
      members,
    };
  };

  const analyzeSummary: AnalyzeSummary = {
    degree: 12,
    depth: 1.8,
    entropy: 1.2,
    combined: 0.7,
    clearance_area: 0,
    penalty: 0.5,
    vertex_count: 48,
  };

  const fetchStub = async (url: string, init?: RequestInit): Promise<Response> => {
    const path = url.replace(/^https?:\/\/[^/]+/, '');
    const method = init?.method ?? 'GET';
    state.requests.push(`${method} ${path}`);
    const body = init?.body ? JSON.parse(init.body as string) : undefined;

    if (method === 'POST' && path === '/layouts') {
      if (!body || body.schema_version !== '1') {
        return error(400, "unsupported schema_version", 'schema_version');
      }
      const id = mint('layout');
      state.layouts.set(id, body as LayoutDocument);
      return json(200, { layout_id: id, name: (body as LayoutDocument).name ?? '' });
    }
    if (method === 'POST' && path === '/analyze') {
      if (body.layout_id && !state.layouts.has(body.layout_id)) {
        return error(404, `unknown layout '${body.layout_id}'`);
      }
      return json(200, { summary: analyzeSummary, heatmap: heatmapFor() });
    }
    if (method === 'POST' && path === '/jobs') {
      const layout = state.layouts.get(body.layout_id);
      if (!layout) return error(404, `unknown layout '${body.layout_id}'`);
      const id = mint('job');
      const view: JobView = {
        job_id: id,
        layout_id: body.layout_id,
        seed: body.seed ?? 0,
        status: 'queued',
        progress: { stage: '', evaluations: 0 },
      };
      state.jobs.set(id, { view, pollsUntilDone, layout });
      return json(202, view);
    }
    const jobMatch = path.match(/^\/jobs\/([^/]+)(\/.*)?$/);
    if (jobMatch) {
      const job = state.jobs.get(jobMatch[1]);
      if (!job) return error(404, `unknown job '${jobMatch[1]}'`);
      const rest = jobMatch[2] ?? '';
      if (method === 'GET' && rest === '') {
        const terminal = ['done', 'failed', 'cancelled'].includes(job.view.status);
        if (terminal) {
          return json(200, job.view);
        }
        if (job.pollsUntilDone > 0) {
          job.pollsUntilDone -= 1;
          job.view = { ...job.view, status: 'running', progress: { stage: 'degree', evaluations: 40 } };
        } else {
          job.view = {
            ...job.view,
            status: 'done',
            progress: { stage: 'done', evaluations: 123 },
            member_count: state.memberCount,
          };
        }
        return json(200, job.view);
      }
      if (method === 'GET' && rest === '/manifest') {
        if (job.view.status !== 'done') return error(409, 'job is running, manifest not available');
        return json(200, manifestFor(jobMatch[1], job.layout));
      }
      const memberMatch = rest.match(/^\/members\/(\d+)$/);
      if (method === 'GET' && memberMatch) {
        const k = Number(memberMatch[1]);
        if (job.view.status !== 'done') return error(409, 'job is running, members not available');
        if (k >= state.memberCount) return error(404, `no member ${k}`);
        return json(200, memberEntry(job.layout, k));
      }
      if (method === 'POST' && rest === '/cancel') {
        job.view = { ...job.view, status: 'cancelled' };
        job.pollsUntilDone = Infinity;
        return json(200, job.view);
      }
    }
    if (method === 'POST' && path === '/rounds') {
      const job = state.jobs.get(body.job_id);
      if (!job) return error(404, `unknown job '${body.job_id}'`);
      if (job.view.status !== 'done') return error(409, 'job is running, members not available');
      const entry = memberEntry(job.layout, body.member_index);
      const id = mint('layout');
      state.layouts.set(id, entry.layout);
      return json(200, { layout_id: id, document: entry.layout, source_job: body.job_id });
    }
    return error(404, `no route ${method} ${path}`);
  };

  return { client: new ApiClient('http://fake', fetchStub), state };
}
