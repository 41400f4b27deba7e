/** Deterministic SVG assembly for multi-curve line plots. */

import { PALETTE } from "./raster.js";
import type { Scale } from "./scale.js";

export interface Curve {
  label: string;
  points: Array<[number, number]>; // data coordinates
}

export interface PlotLayout {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export const DEFAULT_LAYOUT: PlotLayout = {
  width: 960,
  height: 640,
  left: 80,
  right: 24,
  top: 24,
  bottom: 56,
};

const fmt = (v: number): string => {
  if (!Number.isFinite(v)) return "0";
  return Number(v.toPrecision(6)).toString();
};

export function svgDocument(
  curves: Curve[],
  xScale: Scale,
  yScale: Scale,
  xLabel: string,
  yLabel: string,
  layout: PlotLayout = DEFAULT_LAYOUT,
): string {
  const { width, height, left, right, top, bottom } = layout;
  const pw = width - left - right;
  const ph = height - top - bottom;
  const px = (v: number) => left + xScale.unit(v) * pw;
  const py = (v: number) => top + (1 - yScale.unit(v)) * ph;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<rect x="${left}" y="${top}" width="${pw}" height="${ph}" fill="none" ` +
      `stroke="#282828" stroke-width="1"/>`,
  );

  for (const tick of xScale.ticks()) {
    const x = px(tick);
    parts.push(`<line x1="${fmt(x)}" y1="${top + ph}" x2="${fmt(x)}" y2="${top + ph + 6}" stroke="#282828"/>`);
    parts.push(
      `<text x="${fmt(x)}" y="${top + ph + 22}" font-size="13" text-anchor="middle" ` +
        `font-family="sans-serif">${tickText(tick, xScale)}</text>`,
    );
  }
  for (const tick of yScale.ticks()) {
    const y = py(tick);
    parts.push(`<line x1="${left - 6}" y1="${fmt(y)}" x2="${left}" y2="${fmt(y)}" stroke="#282828"/>`);
    parts.push(
      `<text x="${left - 10}" y="${fmt(y + 4)}" font-size="13" text-anchor="end" ` +
        `font-family="sans-serif">${tickText(tick, yScale)}</text>`,
    );
  }
  parts.push(
    `<text x="${left + pw / 2}" y="${height - 12}" font-size="15" text-anchor="middle" ` +
      `font-family="sans-serif">${escapeXml(xLabel)}</text>`,
  );
  parts.push(
    `<text x="18" y="${top + ph / 2}" font-size="15" text-anchor="middle" ` +
      `font-family="sans-serif" transform="rotate(-90 18 ${top + ph / 2})">${escapeXml(yLabel)}</text>`,
  );

  curves.forEach((curve, i) => {
    const c = PALETTE[i % PALETTE.length];
    const color = `rgb(${c.r},${c.g},${c.b})`;
    const coords = curve.points
      .map(([x, y]) => `${fmt(px(x))},${fmt(py(y))}`)
      .join(" ");
    parts.push(
      `<polyline fill="none" stroke="${color}" stroke-width="1.8" points="${coords}"/>`,
    );
    const ly = top + 18 + i * 18;
    parts.push(`<line x1="${left + pw - 150}" y1="${ly - 4}" x2="${left + pw - 126}" y2="${ly - 4}" stroke="${color}" stroke-width="2.5"/>`);
    parts.push(
      `<text x="${left + pw - 120}" y="${ly}" font-size="13" font-family="sans-serif">` +
        `${escapeXml(curve.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

function tickText(v: number, scale: Scale): string {
  if (scale.kind === "log") {
    const e = Math.round(Math.log10(v));
    return `1e${e}`;
  }
  if (v !== 0 && (Math.abs(v) >= 1e4 || Math.abs(v) < 1e-3)) {
    return v.toExponential(1).replace("+", "");
  }
  return fmt(v);
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
