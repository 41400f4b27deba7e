/** A small RGBA raster with just enough drawing for line plots. */

export interface Rgb {
  r: number;
  g: number;
  b: number;
}

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8Array;

  constructor(width: number, height: number, background: Rgb = { r: 255, g: 255, b: 255 }) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 4);
    for (let i = 0; i < width * height; i++) {
      this.pixels[4 * i] = background.r;
      this.pixels[4 * i + 1] = background.g;
      this.pixels[4 * i + 2] = background.b;
      this.pixels[4 * i + 3] = 255;
    }
  }

  set(x: number, y: number, c: Rgb): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) return;
    const k = 4 * (yi * this.width + xi);
    this.pixels[k] = c.r;
    this.pixels[k + 1] = c.g;
    this.pixels[k + 2] = c.b;
    this.pixels[k + 3] = 255;
  }

  /** stroke a segment by stepping at sub-pixel resolution (thickness ~2 px) */
  line(x0: number, y0: number, x1: number, y1: number, c: Rgb): void {
    const steps = Math.max(1, Math.ceil(Math.hypot(x1 - x0, y1 - y0) * 2));
    for (let s = 0; s <= steps; s++) {
      const t = s / steps;
      const x = x0 + t * (x1 - x0);
      const y = y0 + t * (y1 - y0);
      this.set(x, y, c);
      this.set(x + 0.5, y, c);
      this.set(x, y + 0.5, c);
    }
  }

  rectOutline(x0: number, y0: number, x1: number, y1: number, c: Rgb): void {
    this.line(x0, y0, x1, y0, c);
    this.line(x1, y0, x1, y1, c);
    this.line(x1, y1, x0, y1, c);
    this.line(x0, y1, x0, y0, c);
  }
}

/** fixed house palette; curves cycle through it */
export const PALETTE: Rgb[] = [
  { r: 31, g: 119, b: 180 },
  { r: 255, g: 127, b: 14 },
  { r: 44, g: 160, b: 44 },
  { r: 214, g: 39, b: 40 },
  { r: 148, g: 103, b: 189 },
  { r: 140, g: 86, b: 75 },
  { r: 227, g: 119, b: 194 },
  { r: 127, g: 127, b: 127 },
];

export const AXIS_COLOR: Rgb = { r: 40, g: 40, b: 40 };
