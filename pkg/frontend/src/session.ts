/**
 * Studio session: one base layout, local edits with undo, one active
 * optimization job, and the append-only round history of chosen members.
 *
 * The session owns all service traffic for the iterative loop. Numbers
 * shown in the UI (gallery card values, previews) are lifted verbatim
 * from service responses; the client computes no metrics of its own.
 */

import { ApiClient } from './api.js';
import {
  clearRegion,
  cloneDocument,
  regionsReady,
  setParamBound,
  setRegion,
  validateDocument,
  type EditRejected,
  type EditResult,
} from './document.js';
import { pollJob, JOB_POLL_INTERVAL_MS } from './jobs.js';
import type {
  AnalyzeResponse,
  HeatmapDocument,
  JobView,
  LayoutDocument,
  MemberSummary,
  ParamKind,
  RoundManifest,
  Vec2,
} from './types.js';

export interface RoundHistoryEntry {
  /** server-side id of the layout this round started from */
  layoutId: string;
  source: 'loaded' | 'member';
  jobId?: string;
  memberIndex?: number;
}

export interface GalleryCard {
  index: number;
  params: number[];
  summary: MemberSummary;
  layout: LayoutDocument;
  heatmap?: HeatmapDocument;
}

export interface Gallery {
  jobId: string;
  manifest: RoundManifest;
  cards: GalleryCard[];
}

export interface RoundOptions {
  members?: number;
  seed?: number;
  config?: Record<string, unknown>;
  penalties?: Record<string, unknown>;
  intervalMs?: number;
  onProgress?: (view: JobView) => void;
}

function busy(message: string): EditRejected {
  return { ok: false, path: 'session', message };
}

export class StudioSession {
  private doc: LayoutDocument | null = null;
  private baseId: string | null = null;
  private dirty = false;
  private undoStack: LayoutDocument[] = [];
  private historyEntries: RoundHistoryEntry[] = [];
  private activeJobId: string | null = null;
  private galleryState: Gallery | null = null;

  constructor(private readonly client: ApiClient) {}

  get document(): LayoutDocument {
    if (!this.doc) throw new Error('no layout loaded');
    return this.doc;
  }

  get loaded(): boolean {
    return this.doc !== null;
  }

  get baseLayoutId(): string | null {
    return this.baseId;
  }

  get history(): readonly RoundHistoryEntry[] {
    return this.historyEntries;
  }

  get jobRunning(): boolean {
    return this.activeJobId !== null;
  }

  get gallery(): Gallery | null {
    return this.galleryState;
  }

  get undoDepth(): number {
    return this.undoStack.length;
  }

  /** Validate and register a layout with the service; starts the history. */
  async loadDocument(doc: LayoutDocument): Promise<string> {
    const invalid = validateDocument(doc);
    if (invalid) throw new Error(`${invalid.path}: ${invalid.message}`);
    const { layout_id } = await this.client.createLayout(doc);
    this.doc = cloneDocument(doc);
    this.baseId = layout_id;
    this.dirty = false;
    this.undoStack = [];
    this.historyEntries.push({ layoutId: layout_id, source: 'loaded' });
    this.galleryState = null;
    return layout_id;
  }

  private applyEdit(result: EditResult): EditResult {
    if (result.ok) {
      this.undoStack.push(this.document);
      this.doc = result.doc;
      this.dirty = true;
    }
    return result;
  }

  /** Edit one group's bound pair; invalid pairs are rejected locally. */
  setBounds(groupId: string, kind: ParamKind, lower: number, upper: number): EditResult {
    if (this.jobRunning) return busy('editing is disabled while a job runs');
    return this.applyEdit(setParamBound(this.document, groupId, kind, lower, upper));
  }

  /** Replace the query or reference region with a painted polygon. */
  paintRegion(which: 'query' | 'reference', polygon: Vec2[]): EditResult {
    if (this.jobRunning) return busy('editing is disabled while a job runs');
    return this.applyEdit(setRegion(this.document, which, polygon));
  }

  /** Unpaint a region, disabling job launch until it is repainted. */
  clearRegion(which: 'query' | 'reference'): EditResult {
    if (this.jobRunning) return busy('editing is disabled while a job runs');
    return this.applyEdit(clearRegion(this.document, which));
  }

  /** Restore the exact document that preceded the last edit. */
  undo(): boolean {
    if (this.jobRunning || this.undoStack.length === 0) return false;
    this.doc = this.undoStack.pop()!;
    this.dirty = true;
    return true;
  }

  canLaunch(): boolean {
    return this.loaded && !this.jobRunning && regionsReady(this.document);
  }

  /** Push local edits to the service, minting a fresh layout id. */
  async commit(): Promise<string> {
    if (!this.dirty && this.baseId) return this.baseId;
    const { layout_id } = await this.client.createLayout(this.document);
    this.baseId = layout_id;
    this.dirty = false;
    return layout_id;
  }

  /** Painted-grid preview of the current (possibly uncommitted) document. */
  preview(): Promise<AnalyzeResponse> {
    return this.client.analyze({ document: this.document });
  }

  /**
   * Run one optimization round: commit pending edits, start the job,
   * poll at the studio cadence, then assemble the member gallery from
   * the manifest and per-member entries.
   */
  async startRound(options: RoundOptions = {}): Promise<Gallery> {
    if (this.jobRunning) throw new Error('a job is already running in this session');
    if (!regionsReady(this.document)) {
      throw new Error('paint non-empty query and reference regions before launching');
    }
    const layoutId = await this.commit();
    const view = await this.client.startJob({
      layout_id: layoutId,
      seed: options.seed,
      members: options.members,
      config: options.config,
      penalties: options.penalties,
    });
    this.activeJobId = view.job_id;
    try {
      const done = await pollJob(this.client, view.job_id, {
        intervalMs: options.intervalMs ?? JOB_POLL_INTERVAL_MS,
        onProgress: options.onProgress,
      });
      const manifest = await this.client.getManifest(view.job_id);
      const cards: GalleryCard[] = [];
      for (let k = 0; k < (done.member_count ?? manifest.members.length); k++) {
        const entry = await this.client.getMember(view.job_id, k);
        cards.push({
          index: entry.index,
          params: entry.params,
          summary: entry.summary,
          layout: entry.layout,
          heatmap: entry.heatmap,
        });
      }
      this.galleryState = { jobId: view.job_id, manifest, cards };
      return this.galleryState;
    } finally {
      this.activeJobId = null;
    }
  }

  /** Ask the service to stop the running job; the poll loop will reject. */
  async cancelRound(): Promise<void> {
    if (!this.activeJobId) return;
    await this.client.cancelJob(this.activeJobId);
  }

  /**
   * Accept one gallery member as the next round's base layout. The
   * session re-seeds on the server's copy of the member document and the
   * history grows by exactly one entry.
   */
  async selectMember(index: number): Promise<RoundHistoryEntry> {
    if (!this.galleryState) throw new Error('no finished round to select from');
    if (this.jobRunning) throw new Error('a job is already running in this session');
    const accepted = await this.client.acceptRound(this.galleryState.jobId, index);
    this.doc = cloneDocument(accepted.document);
    this.baseId = accepted.layout_id;
    this.dirty = false;
    this.undoStack = [];
    const entry: RoundHistoryEntry = {
      layoutId: accepted.layout_id,
      source: 'member',
      jobId: accepted.source_job,
      memberIndex: index,
    };
    this.historyEntries.push(entry);
    this.galleryState = null;
    return entry;
  }
}
