/**
 * Shared canvas plumbing for the studio renderers: device-pixel-ratio
 * aware sizing and a viewport owned by the renderer stack so plan and
 * heatmap layers stay registered.
 */

import { Viewport, type ScreenPoint } from '../viewport.js';

export class BaseRenderer {
  readonly viewport: Viewport;

  constructor(
    protected readonly ctx: CanvasRenderingContext2D,
    width: number,
    height: number,
    protected readonly dpr: number = 1,
    viewport?: Viewport,
  ) {
    this.viewport = viewport ?? new Viewport(width, height);
    this.resize(width, height);
  }

  resize(width: number, height: number): void {
    this.viewport.resize(width, height);
    const canvas = this.ctx.canvas;
    canvas.width = Math.round(width * this.dpr);
    canvas.height = Math.round(height * this.dpr);
  }

  clear(): void {
    this.ctx.setTransform(1, 0, 0, 1, 0, 0);
    this.ctx.clearRect(0, 0, this.ctx.canvas.width, this.ctx.canvas.height);
    this.ctx.setTransform(this.dpr, 0, 0, this.dpr, 0, 0);
  }

  protected moveToWorld(x: number, y: number): void {
    const p = this.viewport.worldToScreen({ x, y });
    this.ctx.moveTo(p.x, p.y);
  }

  protected lineToWorld(x: number, y: number): void {
    const p = this.viewport.worldToScreen({ x, y });
    this.ctx.lineTo(p.x, p.y);
  }

  protected tracePolygon(points: Array<[number, number]>): void {
    if (points.length === 0) return;
    this.ctx.beginPath();
    this.moveToWorld(points[0][0], points[0][1]);
    for (let i = 1; i < points.length; i++) {
      this.lineToWorld(points[i][0], points[i][1]);
    }
    this.ctx.closePath();
  }

  pan(dxPx: number, dyPx: number): void {
    this.viewport.panBy(dxPx, dyPx);
  }

  zoomAt(anchor: ScreenPoint, factor: number): void {
    this.viewport.zoomAt(anchor, factor);
  }
}
