/**
 * Comparison layer: all gallery members' wall sets drawn at once in
 * distinct hues over the faded base plan, so the spread of the diversity
 * set is visible in a single view.
 */

import { memberColor } from '../colormap.js';
import type { GalleryCard } from '../session.js';
import type { LayoutDocument } from '../types.js';
import { BaseRenderer } from './base.js';

export class SuperimposedRenderer extends BaseRenderer {
  draw(base: LayoutDocument, cards: GalleryCard[]): void {
    this.clear();
    this.drawWalls(base, 'rgba(31, 36, 48, 0.25)', 2.5);
    cards.forEach((card, i) => {
      this.drawWalls(card.layout, memberColor(i, cards.length, 0.85), 2.5);
    });
  }

  private drawWalls(doc: LayoutDocument, color: string, width: number): void {
    this.ctx.strokeStyle = color;
    this.ctx.lineWidth = width;
    this.ctx.lineCap = 'round';
    for (const wall of doc.walls) {
      this.ctx.beginPath();
      this.moveToWorld(wall.a[0], wall.a[1]);
      this.lineToWorld(wall.b[0], wall.b[1]);
      this.ctx.stroke();
    }
  }
}
