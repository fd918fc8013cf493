/**
 * Floor-plan layer: grid outline, walls (grouped walls tinted, selection
 * highlighted), group pivots, and the painted query/reference polygons.
 */

import type { LayoutDocument, Vec2 } from '../types.js';
import { BaseRenderer } from './base.js';

export interface PlanState {
  selectedGroupId?: string | null;
  hoveredWallId?: string | null;
  /** in-progress region brush, drawn as a dashed outline */
  brush?: { which: 'query' | 'reference'; points: Vec2[] } | null;
}

const WALL_COLOR = '#1f2430';
const GROUP_COLOR = '#3a6ea5';
const SELECTED_COLOR = '#d97706';
const HOVER_COLOR = '#7c3aed';
const QUERY_FILL = 'rgba(16, 185, 129, 0.14)';
const QUERY_EDGE = 'rgba(5, 150, 105, 0.9)';
const REFERENCE_FILL = 'rgba(59, 130, 246, 0.08)';
const REFERENCE_EDGE = 'rgba(37, 99, 235, 0.7)';

export class PlanRenderer extends BaseRenderer {
  fitDocument(doc: LayoutDocument): void {
    const g = doc.grid;
    this.viewport.fitBounds(g.origin[0], g.origin[1], g.origin[0] + g.width, g.origin[1] + g.height);
  }

  draw(doc: LayoutDocument, state: PlanState = {}): void {
    this.clear();
    this.drawGridOutline(doc);
    this.drawRegion(doc.regions.reference, REFERENCE_FILL, REFERENCE_EDGE);
    this.drawRegion(doc.regions.query, QUERY_FILL, QUERY_EDGE);
    this.drawWalls(doc, state);
    this.drawPivots(doc, state);
    if (state.brush && state.brush.points.length >= 2) {
      this.drawBrush(state.brush.points, state.brush.which === 'query' ? QUERY_EDGE : REFERENCE_EDGE);
    }
  }

  private drawGridOutline(doc: LayoutDocument): void {
    const g = doc.grid;
    const pitch = 1 / g.resolution;
    this.ctx.strokeStyle = '#d8dce4';
    this.ctx.lineWidth = 1;
    for (let x = g.origin[0]; x <= g.origin[0] + g.width + 1e-9; x += pitch) {
      this.ctx.beginPath();
      this.moveToWorld(x, g.origin[1]);
      this.lineToWorld(x, g.origin[1] + g.height);
      this.ctx.stroke();
    }
    for (let y = g.origin[1]; y <= g.origin[1] + g.height + 1e-9; y += pitch) {
      this.ctx.beginPath();
      this.moveToWorld(g.origin[0], y);
      this.lineToWorld(g.origin[0] + g.width, y);
      this.ctx.stroke();
    }
    this.tracePolygon([
      [g.origin[0], g.origin[1]],
      [g.origin[0] + g.width, g.origin[1]],
      [g.origin[0] + g.width, g.origin[1] + g.height],
      [g.origin[0], g.origin[1] + g.height],
    ]);
    this.ctx.strokeStyle = '#9aa1ad';
    this.ctx.stroke();
  }

  private drawRegion(polygon: Vec2[], fill: string, edge: string): void {
    if (polygon.length < 3) return;
    this.tracePolygon(polygon);
    this.ctx.fillStyle = fill;
    this.ctx.fill();
    this.ctx.strokeStyle = edge;
    this.ctx.lineWidth = 1.5;
    this.ctx.stroke();
  }

  private groupOfWall(doc: LayoutDocument, wallId: string): string | null {
    for (const g of doc.groups ?? []) {
      if (g.walls.includes(wallId)) return g.id;
    }
    return null;
  }

  private drawWalls(doc: LayoutDocument, state: PlanState): void {
    for (const wall of doc.walls) {
      const groupId = this.groupOfWall(doc, wall.id);
      let color = groupId ? GROUP_COLOR : WALL_COLOR;
      let width = groupId ? 3.5 : 3;
      if (groupId && groupId === state.selectedGroupId) {
        color = SELECTED_COLOR;
        width = 5;
      } else if (wall.id === state.hoveredWallId) {
        color = HOVER_COLOR;
        width = 4.5;
      }
      this.ctx.beginPath();
      this.moveToWorld(wall.a[0], wall.a[1]);
      this.lineToWorld(wall.b[0], wall.b[1]);
      this.ctx.strokeStyle = color;
      this.ctx.lineWidth = width;
      this.ctx.lineCap = 'round';
      this.ctx.stroke();
    }
  }

  private drawPivots(doc: LayoutDocument, state: PlanState): void {
    for (const g of doc.groups ?? []) {
      const p = this.viewport.worldToScreen({ x: g.pivot[0], y: g.pivot[1] });
      this.ctx.beginPath();
      this.ctx.arc(p.x, p.y, g.id === state.selectedGroupId ? 5 : 3.5, 0, 2 * Math.PI);
      this.ctx.fillStyle = g.id === state.selectedGroupId ? SELECTED_COLOR : GROUP_COLOR;
      this.ctx.fill();
    }
  }

  private drawBrush(points: Vec2[], edge: string): void {
    this.ctx.beginPath();
    this.moveToWorld(points[0][0], points[0][1]);
    for (let i = 1; i < points.length; i++) {
      this.lineToWorld(points[i][0], points[i][1]);
    }
    this.ctx.setLineDash([6, 4]);
    this.ctx.strokeStyle = edge;
    this.ctx.lineWidth = 1.5;
    this.ctx.stroke();
    this.ctx.setLineDash([]);
  }

  /** Nearest wall within `thresholdPx` of a screen point, for selection. */
  hitTestWall(doc: LayoutDocument, screen: { x: number; y: number }, thresholdPx = 8): string | null {
    const w = this.viewport.screenToWorld(screen);
    const thresholdWorld = thresholdPx / this.viewport.scale;
    let best: string | null = null;
    let bestDist = thresholdWorld;
    for (const wall of doc.walls) {
      const d = distanceToSegment(w.x, w.y, wall.a, wall.b);
      if (d <= bestDist) {
        bestDist = d;
        best = wall.id;
      }
    }
    return best;
  }
}

export function distanceToSegment(px: number, py: number, a: Vec2, b: Vec2): number {
  const vx = b[0] - a[0];
  const vy = b[1] - a[1];
  const lengthSq = vx * vx + vy * vy;
  let t = 0;
  if (lengthSq > 0) {
    t = ((px - a[0]) * vx + (py - a[1]) * vy) / lengthSq;
    t = Math.min(1, Math.max(0, t));
  }
  const cx = a[0] + t * vx;
  const cy = a[1] + t * vy;
  return Math.hypot(px - cx, py - cy);
}
