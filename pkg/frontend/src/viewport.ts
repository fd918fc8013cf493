/**
 * World <-> screen mapping for the plan canvases. World units are meters
 * with y up; screen units are CSS pixels with y down. Kept free of any
 * canvas dependency so the math is testable headless.
 */

export interface ScreenPoint {
  x: number;
  y: number;
}

export interface WorldPoint {
  x: number;
  y: number;
}

export class Viewport {
  /** pixels per meter */
  scale = 50;
  panX = 0;
  panY = 0;

  constructor(
    public width: number,
    public height: number,
  ) {}

  resize(width: number, height: number): void {
    this.width = width;
    this.height = height;
  }

  worldToScreen(p: WorldPoint): ScreenPoint {
    return {
      x: (p.x + this.panX) * this.scale,
      y: this.height - (p.y + this.panY) * this.scale,
    };
  }

  screenToWorld(p: ScreenPoint): WorldPoint {
    return {
      x: p.x / this.scale - this.panX,
      y: (this.height - p.y) / this.scale - this.panY,
    };
  }

  /** Pan by a screen-space delta (e.g. mouse drag). */
  panBy(dxPx: number, dyPx: number): void {
    this.panX += dxPx / this.scale;
    this.panY -= dyPx / this.scale;
  }

  /** Zoom by `factor`, keeping the world point under `anchor` fixed. */
  zoomAt(anchor: ScreenPoint, factor: number): void {
    const before = this.screenToWorld(anchor);
    this.scale = Math.min(2000, Math.max(2, this.scale * factor));
    const after = this.screenToWorld(anchor);
    this.panX += after.x - before.x;
    this.panY += after.y - before.y;
  }

  /** Fit a world-space box into the view with a pixel margin. */
  fitBounds(minX: number, minY: number, maxX: number, maxY: number, marginPx = 24): void {
    const w = Math.max(maxX - minX, 1e-9);
    const h = Math.max(maxY - minY, 1e-9);
    this.scale = Math.min(
      (this.width - 2 * marginPx) / w,
      (this.height - 2 * marginPx) / h,
    );
    const cx = (minX + maxX) / 2;
    const cy = (minY + maxY) / 2;
    this.panX = this.width / (2 * this.scale) - cx;
    this.panY = this.height / (2 * this.scale) - cy;
  }
}
