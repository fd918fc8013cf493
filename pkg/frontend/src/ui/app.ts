/**
 * Studio shell: canvas stack on the left (plan + heatmap overlay +
 * superimposed comparison), control column on the right (bounds, region
 * brushes, round launcher, gallery, history). All state lives in the
 * StudioSession; this class only wires DOM events to it and repaints.
 */

import { ApiClient } from '../api.js';
import { StudioSession, type GalleryCard } from '../session.js';
import { PlanRenderer } from '../renderers/plan.js';
import { HeatmapRenderer } from '../renderers/heatmap.js';
import { SuperimposedRenderer } from '../renderers/superimposed.js';
import { RegionBrush } from './regionBrush.js';
import { BoundsPanel } from './boundsPanel.js';
import { GalleryView } from './galleryView.js';
import type { HeatmapDocument, HeatmapMetric, LayoutDocument } from '../types.js';

const CANVAS_W = 860;
const CANVAS_H = 620;

export class StudioApp {
  private readonly session: StudioSession;
  private readonly plan: PlanRenderer;
  private readonly heat: HeatmapRenderer;
  private readonly compare: SuperimposedRenderer;
  private readonly bounds: BoundsPanel;
  private readonly galleryView: GalleryView;

  private selectedGroupId: string | null = null;
  private brush: RegionBrush | null = null;
  private overlayDoc: HeatmapDocument | null = null;
  private overlayMetric: HeatmapMetric = 'combined';
  private inspected: LayoutDocument | null = null;
  private superimposed = false;

  private status!: HTMLElement;
  private runButton!: HTMLButtonElement;
  private membersInput!: HTMLInputElement;
  private seedInput!: HTMLInputElement;
  private metricSelect!: HTMLSelectElement;
  private historyList!: HTMLElement;
  private galleryRoot!: HTMLElement;
  private boundsRoot!: HTMLElement;
  private planCanvas!: HTMLCanvasElement;

  constructor(root: HTMLElement, client: ApiClient) {
    this.session = new StudioSession(client);
    const { planCtx, heatCtx, compareCtx } = this.buildDom(root);
    const dpr = window.devicePixelRatio || 1;
    this.plan = new PlanRenderer(planCtx, CANVAS_W, CANVAS_H, dpr);
    this.heat = new HeatmapRenderer(heatCtx, CANVAS_W, CANVAS_H, dpr, this.plan.viewport);
    this.compare = new SuperimposedRenderer(compareCtx, CANVAS_W, CANVAS_H, dpr, this.plan.viewport);
    this.bounds = new BoundsPanel(this.boundsRoot, this.session, () => this.afterEdit());
    this.galleryView = new GalleryView(this.galleryRoot, {
      onInspect: (card, overlay) => this.inspectMember(card, overlay),
      onSuperimpose: (enabled) => {
        this.superimposed = enabled;
        this.repaint();
      },
      onChoose: (index) => void this.chooseMember(index),
    });
    this.bindCanvasEvents();
  }

  async loadDocument(doc: LayoutDocument): Promise<void> {
    await this.session.loadDocument(doc);
    this.plan.fitDocument(doc);
    this.overlayDoc = null;
    this.inspected = null;
    this.superimposed = false;
    this.say(`loaded '${doc.name ?? 'layout'}' as ${this.session.baseLayoutId}`);
    this.refreshControls();
    this.repaint();
    await this.refreshPreview();
  }

  // --- DOM scaffolding -------------------------------------------------

  private buildDom(root: HTMLElement) {
    root.textContent = '';
    root.className = 'studio';

    const canvasStack = document.createElement('div');
    canvasStack.className = 'canvas-stack';
    canvasStack.style.position = 'relative';
    canvasStack.style.width = `${CANVAS_W}px`;
    canvasStack.style.height = `${CANVAS_H}px`;
    const mk = (z: number) => {
      const c = document.createElement('canvas');
      c.style.position = 'absolute';
      c.style.inset = '0';
      c.style.width = `${CANVAS_W}px`;
      c.style.height = `${CANVAS_H}px`;
      c.style.zIndex = String(z);
      canvasStack.appendChild(c);
      return c;
    };
    const heatCanvas = mk(1);
    this.planCanvas = mk(2);
    const compareCanvas = mk(3);
    compareCanvas.style.pointerEvents = 'none';
    root.appendChild(canvasStack);

    const side = document.createElement('div');
    side.className = 'side-panel';

    this.status = document.createElement('p');
    this.status.className = 'status';
    side.appendChild(this.status);

    const regionRow = document.createElement('div');
    regionRow.className = 'region-row';
    for (const which of ['query', 'reference'] as const) {
      const b = document.createElement('button');
      b.textContent = `paint ${which}`;
      b.addEventListener('click', () => {
        this.brush = new RegionBrush(which);
        this.say(`painting ${which}: click vertices, double-click to close`);
      });
      regionRow.appendChild(b);
    }
    const undoButton = document.createElement('button');
    undoButton.textContent = 'undo';
    undoButton.addEventListener('click', () => {
      if (this.session.undo()) {
        this.say('undid last edit');
        this.afterEdit();
      }
    });
    regionRow.appendChild(undoButton);
    side.appendChild(regionRow);

    this.boundsRoot = document.createElement('div');
    this.boundsRoot.className = 'bounds-panel';
    side.appendChild(this.boundsRoot);

    const jobRow = document.createElement('div');
    jobRow.className = 'job-row';
    this.membersInput = document.createElement('input');
    this.membersInput.type = 'number';
    this.membersInput.value = '5';
    this.membersInput.min = '1';
    this.seedInput = document.createElement('input');
    this.seedInput.type = 'number';
    this.seedInput.value = '0';
    this.runButton = document.createElement('button');
    this.runButton.textContent = 'run round';
    this.runButton.addEventListener('click', () => void this.runRound());
    jobRow.append('members ', this.membersInput, ' seed ', this.seedInput, this.runButton);
    side.appendChild(jobRow);

    this.metricSelect = document.createElement('select');
    for (const m of ['combined', 'degree', 'depth', 'entropy'] as const) {
      const opt = document.createElement('option');
      opt.value = m;
      opt.textContent = m;
      this.metricSelect.appendChild(opt);
    }
    this.metricSelect.addEventListener('change', () => {
      this.overlayMetric = this.metricSelect.value as HeatmapMetric;
      this.repaint();
    });
    side.appendChild(this.metricSelect);

    this.galleryRoot = document.createElement('div');
    this.galleryRoot.className = 'gallery';
    side.appendChild(this.galleryRoot);

    this.historyList = document.createElement('ol');
    this.historyList.className = 'history';
    side.appendChild(this.historyList);

    root.appendChild(side);

    return {
      planCtx: this.planCanvas.getContext('2d')!,
      heatCtx: heatCanvas.getContext('2d')!,
      compareCtx: compareCanvas.getContext('2d')!,
    };
  }

  private bindCanvasEvents(): void {
    let dragging = false;
    let moved = false;
    let last = { x: 0, y: 0 };
    const local = (e: MouseEvent) => {
      const rect = this.planCanvas.getBoundingClientRect();
      return { x: e.clientX - rect.left, y: e.clientY - rect.top };
    };

    this.planCanvas.addEventListener('mousedown', (e) => {
      dragging = true;
      moved = false;
      last = local(e);
    });
    this.planCanvas.addEventListener('mousemove', (e) => {
      if (!dragging) return;
      const p = local(e);
      if (Math.hypot(p.x - last.x, p.y - last.y) > 2) moved = true;
      this.plan.pan(p.x - last.x, p.y - last.y);
      last = p;
      this.repaint();
    });
    this.planCanvas.addEventListener('mouseup', (e) => {
      dragging = false;
      if (moved || !this.session.loaded) return;
      const p = local(e);
      if (this.brush) {
        const w = this.plan.viewport.screenToWorld(p);
        this.brush.addPoint(w.x, w.y);
        this.repaint();
        return;
      }
      const wallId = this.plan.hitTestWall(this.session.document, p);
      this.selectGroupByWall(wallId);
    });
    this.planCanvas.addEventListener('dblclick', () => {
      if (!this.brush) return;
      const polygon = this.brush.close();
      const which = this.brush.which;
      this.brush = null;
      if (!polygon) {
        this.say('need at least 3 vertices; brush cancelled');
        this.repaint();
        return;
      }
      const result = this.session.paintRegion(which, polygon);
      this.say(result.ok ? `painted ${which} region` : `${result.path}: ${result.message}`);
      this.afterEdit();
    });
    this.planCanvas.addEventListener('wheel', (e) => {
      e.preventDefault();
      this.plan.zoomAt(local(e as MouseEvent), e.deltaY < 0 ? 1.15 : 1 / 1.15);
      this.repaint();
    });
  }

  // --- actions ---------------------------------------------------------

  private selectGroupByWall(wallId: string | null): void {
    this.selectedGroupId = null;
    if (wallId && this.session.loaded) {
      for (const g of this.session.document.groups ?? []) {
        if (g.walls.includes(wallId)) this.selectedGroupId = g.id;
      }
    }
    this.bounds.setGroup(this.selectedGroupId);
    this.repaint();
  }

  private afterEdit(): void {
    this.refreshControls();
    this.repaint();
    void this.refreshPreview();
  }

  private async refreshPreview(): Promise<void> {
    if (!this.session.loaded || this.session.jobRunning) return;
    try {
      const res = await this.session.preview();
      this.overlayDoc = res.heatmap;
      this.inspected = null;
      this.repaint();
    } catch (err) {
      this.overlayDoc = null;
      this.say(err instanceof Error ? err.message : String(err));
      this.repaint();
    }
  }

  private async runRound(): Promise<void> {
    if (!this.session.canLaunch()) {
      this.say('cannot launch: paint both regions first (and wait for any running job)');
      return;
    }
    this.refreshControls(true);
    try {
      const gallery = await this.session.startRound({
        members: Number(this.membersInput.value) || undefined,
        seed: Number(this.seedInput.value) || 0,
        onProgress: (view) => {
          this.say(`job ${view.status}: ${view.progress.stage || 'queued'} (${view.progress.evaluations} evaluations)`);
        },
      });
      this.say(`round done: ${gallery.cards.length} members, ${gallery.manifest.evaluations} evaluations`);
      this.galleryView.render(gallery);
    } catch (err) {
      this.say(err instanceof Error ? err.message : String(err));
    } finally {
      this.refreshControls();
      this.repaint();
    }
  }

  private inspectMember(card: GalleryCard, overlay: boolean): void {
    this.inspected = card.layout;
    this.overlayDoc = overlay ? (card.heatmap ?? null) : null;
    this.superimposed = false;
    this.say(`viewing member ${card.index}`);
    this.repaint();
  }

  private async chooseMember(index: number): Promise<void> {
    try {
      const entry = await this.session.selectMember(index);
      this.inspected = null;
      this.overlayDoc = null;
      this.superimposed = false;
      this.galleryView.clear();
      this.say(`member ${index} is the new base (${entry.layoutId})`);
      this.refreshControls();
      this.repaint();
      await this.refreshPreview();
    } catch (err) {
      this.say(err instanceof Error ? err.message : String(err));
    }
  }

  // --- rendering -------------------------------------------------------

  private refreshControls(running = false): void {
    this.runButton.disabled = running || !this.session.canLaunch();
    this.historyList.textContent = '';
    for (const entry of this.session.history) {
      const li = document.createElement('li');
      li.textContent =
        entry.source === 'loaded'
          ? `loaded ${entry.layoutId}`
          : `member ${entry.memberIndex} of job ${entry.jobId} -> ${entry.layoutId}`;
      this.historyList.appendChild(li);
    }
  }

  private say(text: string): void {
    this.status.textContent = text;
  }

  private repaint(): void {
    if (!this.session.loaded) return;
    const doc = this.inspected ?? this.session.document;
    this.plan.draw(doc, {
      selectedGroupId: this.selectedGroupId,
      brush: this.brush ? { which: this.brush.which, points: [...this.brush.points] } : null,
    });
    if (this.overlayDoc) {
      this.heat.draw(this.overlayDoc, this.overlayMetric, { fadeNonQuery: true });
    } else {
      this.heat.clear();
    }
    if (this.superimposed && this.session.gallery) {
      this.compare.draw(this.session.document, this.session.gallery.cards);
    } else {
      this.compare.clear();
    }
  }
}
