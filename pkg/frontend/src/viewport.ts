// wide cohort layouts need ~0.08 to fit a 1200px view, keep headroom below
export const MIN_SCALE = 0.01;
export const MAX_SCALE = 5;

/**
 * Pan/zoom state mapping world (layout) coordinates to screen pixels:
 * screen = world * scale + offset. All mutations clamp the scale and
 * every transform has an exact inverse.
 */
export class Viewport {
  offsetX = 0;
  offsetY = 0;
  scale = 1;

  toScreen(x: number, y: number): { x: number; y: number } {
    return { x: x * this.scale + this.offsetX, y: y * this.scale + this.offsetY };
  }

  toWorld(sx: number, sy: number): { x: number; y: number } {
    return { x: (sx - this.offsetX) / this.scale, y: (sy - this.offsetY) / this.scale };
  }

  panBy(dx: number, dy: number): void {
    this.offsetX += dx;
    this.offsetY += dy;
  }

  setScale(scale: number): void {
    this.scale = Math.min(MAX_SCALE, Math.max(MIN_SCALE, scale));
  }

  /** Zoom by `factor`, keeping the screen point (sx, sy) fixed. */
  zoomAt(factor: number, sx: number, sy: number): void {
    const pivot = this.toWorld(sx, sy);
    this.setScale(this.scale * factor);
    this.offsetX = sx - pivot.x * this.scale;
    this.offsetY = sy - pivot.y * this.scale;
  }

  /** Place the world point (x, y) at the center of a view of w x h pixels. */
  centerOn(x: number, y: number, viewW: number, viewH: number): void {
    this.offsetX = viewW / 2 - x * this.scale;
    this.offsetY = viewH / 2 - y * this.scale;
  }

  /** Fit a full scene into the view, as the initial presentation. */
  fit(sceneW: number, sceneH: number, viewW: number, viewH: number): void {
    const raw = Math.min(viewW / Math.max(sceneW, 1), viewH / Math.max(sceneH, 1));
    this.setScale(raw);
    this.offsetX = (viewW - sceneW * this.scale) / 2;
    this.offsetY = (viewH - sceneH * this.scale) / 2;
  }

  transformAttribute(): string {
    return `translate(${this.offsetX} ${this.offsetY}) scale(${this.scale})`;
  }
}
