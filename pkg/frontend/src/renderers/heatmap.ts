/**
 * Heatmap layer: one pitch-sized cell per grid vertex, colored on the
 * fixed blue-to-red ramp over the selected metric's observed range.
 * Drawn under or over the plan layer depending on the overlay toggle.
 */

import { valueToCss } from '../colormap.js';
import type { HeatmapDocument, HeatmapMetric } from '../types.js';
import { BaseRenderer } from './base.js';

export interface HeatmapStyle {
  alpha?: number;
  /** dim cells outside the query region instead of hiding them */
  fadeNonQuery?: boolean;
}

export function metricRange(doc: HeatmapDocument, metric: HeatmapMetric): { min: number; max: number } {
  const values = doc[metric];
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  return { min, max };
}

export class HeatmapRenderer extends BaseRenderer {
  draw(doc: HeatmapDocument, metric: HeatmapMetric, style: HeatmapStyle = {}): void {
    this.clear();
    const alpha = style.alpha ?? 0.75;
    const { min, max } = metricRange(doc, metric);
    const values = doc[metric];
    const half = doc.pitch / 2;
    for (let i = 0; i < doc.x.length; i++) {
      const a = this.viewport.worldToScreen({ x: doc.x[i] - half, y: doc.y[i] + half });
      const b = this.viewport.worldToScreen({ x: doc.x[i] + half, y: doc.y[i] - half });
      const cellAlpha = style.fadeNonQuery && !doc.query[i] ? alpha * 0.25 : alpha;
      this.ctx.fillStyle = valueToCss(values[i], min, max, cellAlpha);
      this.ctx.fillRect(a.x, a.y, b.x - a.x, b.y - a.y);
    }
  }
}
