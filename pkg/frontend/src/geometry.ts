import { Vec2 } from "./types.js";

/**
 * Affine map between model space [0,1]^2 and screen pixels.
 *
 * The unit square is centered in the viewport and scaled to its shorter side
 * minus margins, then by the zoom factor about the viewport center. The map
 * and its inverse compose to identity, so round trips stay far inside the
 * 0.5 px fidelity budget at any zoom.
 */
export class Viewport {
  constructor(
    public width: number,
    public height: number,
    public margin = 24,
    public zoom = 1,
  ) {}

  /** Pixels per model unit at the current zoom. */
  scale(): number {
    return (Math.min(this.width, this.height) - 2 * this.margin) * this.zoom;
  }

  toScreen(p: Vec2): Vec2 {
    const s = this.scale();
    return {
      x: this.width / 2 + (p.x - 0.5) * s,
      y: this.height / 2 + (p.y - 0.5) * s,
    };
  }

  toModel(p: Vec2): Vec2 {
    const s = this.scale();
    return {
      x: (p.x - this.width / 2) / s + 0.5,
      y: (p.y - this.height / 2) / s + 0.5,
    };
  }

  setZoom(zoom: number): void {
    // keep the map invertible and the plot visible
    this.zoom = Math.min(16, Math.max(0.1, zoom));
  }
}
