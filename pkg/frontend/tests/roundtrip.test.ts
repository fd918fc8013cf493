/**
 * Studio round-trip against a live service: load the demo fixture, edit
 * one group's bounds, paint both regions, run a 3-member round, check
 * the gallery against the manifest, then accept member 2 and confirm the
 * next analysis reproduces its stored evaluation exactly.
 */

import { spawn, type ChildProcess } from 'node:child_process';
import { readFileSync } from 'node:fs';
import { fileURLToPath } from 'node:url';
import path from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api';
import { StudioSession } from '../src/session';
import type { LayoutDocument } from '../src/types';

const PORT = 8219;
const BASE = `http://127.0.0.1:${PORT}`;
const REPO_ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), '../..');

let server: ChildProcess;
let serverLog = '';

async function waitForService(timeoutMs = 30_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${BASE}/jobs/probe`);
      if (res.status === 404) return;
    } catch {
      // not listening yet
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error(`service did not come up on ${BASE}\n${serverLog}`);
}

beforeAll(async () => {
  server = spawn(
    'python3',
    ['-m', 'uvicorn', 'layoutforge.service:app', '--port', String(PORT)],
    { cwd: REPO_ROOT, stdio: ['ignore', 'pipe', 'pipe'] },
  );
  server.stdout?.on('data', (chunk) => (serverLog += chunk));
  server.stderr?.on('data', (chunk) => (serverLog += chunk));
  await waitForService();
});

afterAll(() => {
  server?.kill();
});

function loadFixture(): LayoutDocument {
  const file = path.join(REPO_ROOT, 'fixtures', 'studio_flat.json');
  return JSON.parse(readFileSync(file, 'utf-8')) as LayoutDocument;
}

describe('studio round-trip', () => {
  it('runs a full design round against the service', async () => {
    const client = new ApiClient(BASE);
    const session = new StudioSession(client);

    // 1. load the fixture
    await session.loadDocument(loadFixture());
    expect(session.baseLayoutId).toBeTruthy();
    expect(session.history).toHaveLength(1);

    // 2. edit bounds on one group; an invalid pair is rejected inline
    const bad = session.setBounds('kitchen', 'translation-x', 3, -3);
    expect(bad.ok).toBe(false);
    const good = session.setBounds('kitchen', 'translation-x', -1.5, 4.0);
    expect(good.ok).toBe(true);

    // 3. paint both regions and preview the painted grid
    expect(session.paintRegion('query', [[0.2, 0.2], [3.4, 0.2], [3.4, 3.4], [0.2, 3.4]]).ok).toBe(true);
    expect(session.paintRegion('reference', [[0, 0], [12, 0], [12, 8], [0, 8]]).ok).toBe(true);
    const preview = await session.preview();
    expect(preview.summary.vertex_count).toBeGreaterThan(0);
    expect(preview.heatmap.x.length).toBe(preview.summary.vertex_count);
    expect(session.canLaunch()).toBe(true);

    // 4. run a 3-member round
    const stages: string[] = [];
    const gallery = await session.startRound({
      members: 3,
      seed: 5,
      config: { stage_evaluations: 120, diversity_evaluations: 240 },
      onProgress: (view) => {
        if (view.progress.stage) stages.push(view.progress.stage);
      },
    });
    expect(stages.length).toBeGreaterThan(0);

    // 5. the gallery shows 3 members whose values equal the manifest's
    expect(gallery.cards).toHaveLength(3);
    expect(gallery.manifest.members).toHaveLength(3);
    gallery.cards.forEach((card, k) => {
      expect(card.index).toBe(k);
      expect(card.summary).toEqual(gallery.manifest.members[k].summary);
      expect(card.params).toEqual(gallery.manifest.members[k].params);
      expect(card.heatmap?.x.length).toBe(card.summary.vertex_count);
    });

    // 6. accept member 2; the next analysis must reproduce its stored
    //    evaluation exactly (the numbers shown are the server's own)
    const member2 = gallery.cards[2];
    const entry = await session.selectMember(2);
    expect(entry).toEqual({
      layoutId: session.baseLayoutId,
      source: 'member',
      jobId: gallery.jobId,
      memberIndex: 2,
    });
    expect(session.history.map((h) => h.source)).toEqual(['loaded', 'member']);

    const next = await client.analyze({ layout_id: session.baseLayoutId! });
    expect(next.summary.degree).toBe(member2.summary.degree);
    expect(next.summary.depth).toBe(member2.summary.depth);
    expect(next.summary.entropy).toBe(member2.summary.entropy);
    expect(next.summary.combined).toBe(member2.summary.combined);
    expect(next.summary.clearance_area).toBe(member2.summary.clearance_area);
    expect(next.summary.penalty).toBe(member2.summary.penalty);
    expect(next.summary.vertex_count).toBe(member2.summary.vertex_count);
  });

  it('chains a second round from the accepted member', async () => {
    const client = new ApiClient(BASE);
    const session = new StudioSession(client);
    await session.loadDocument(loadFixture());
    await session.startRound({
      members: 2,
      seed: 1,
      config: { stage_evaluations: 60, diversity_evaluations: 120 },
    });
    await session.selectMember(0);
    const baseAfterFirst = session.baseLayoutId;

    // re-run with a narrower query region painted on the accepted base
    expect(session.paintRegion('query', [[8.2, 4.2], [11.4, 4.2], [11.4, 7.4], [8.2, 7.4]]).ok).toBe(true);
    const second = await session.startRound({
      members: 2,
      seed: 2,
      config: { stage_evaluations: 60, diversity_evaluations: 120 },
    });
    expect(second.cards).toHaveLength(2);
    await session.selectMember(1);
    expect(session.history.map((h) => h.source)).toEqual(['loaded', 'member', 'member']);
    expect(session.baseLayoutId).not.toBe(baseAfterFirst);
  });
});
