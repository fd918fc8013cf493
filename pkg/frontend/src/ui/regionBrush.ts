/**
 * Polygon brush for painting the query/reference regions: collect
 * clicked vertices, close into a polygon with at least three points.
 * Pure state machine; the canvas layer feeds it world coordinates.
 */

import type { Vec2 } from '../types.js';

export class RegionBrush {
  private pts: Vec2[] = [];

  constructor(public readonly which: 'query' | 'reference') {}

  get points(): readonly Vec2[] {
    return this.pts;
  }

  addPoint(x: number, y: number): void {
    this.pts.push([x, y]);
  }

  get closable(): boolean {
    return this.pts.length >= 3;
  }

  /** Finish the polygon; null when fewer than three vertices were placed. */
  close(): Vec2[] | null {
    if (!this.closable) return null;
    const polygon = this.pts.map((p) => [p[0], p[1]] as Vec2);
    this.pts = [];
    return polygon;
  }

  cancel(): void {
    this.pts = [];
  }
}
