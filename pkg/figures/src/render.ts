/** Turn one recipe + CSV into an SVG and a PNG. */

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { basename, dirname, join } from "node:path";

import { columnIndex, parseCsv } from "./csv.js";
import { encodePng } from "./png.js";
import { AXIS_COLOR, PALETTE, Raster } from "./raster.js";
import type { FigureRecipe } from "./recipes.js";
import { makeScale } from "./scale.js";
import { type Curve, DEFAULT_LAYOUT, svgDocument } from "./svg.js";

export interface RenderResult {
  figure: string;
  svgPath: string;
  pngPath: string;
  curveCount: number;
  curveLabels: string[];
  xScale: "linear" | "log";
  pointCount: number;
}

export function extractCurves(recipe: FigureRecipe, csvText: string, source: string): Curve[] {
  const table = parseCsv(csvText);
  const xi = columnIndex(table, recipe.x, source);
  const yi = columnIndex(table, recipe.y, source);
  const groupCols = recipe.groupBy == null ? [] :
    Array.isArray(recipe.groupBy) ? recipe.groupBy : [recipe.groupBy];
  const gis = groupCols.map((g) => columnIndex(table, g, source));
  const errIdx = table.columns.indexOf("error");

  const groups = new Map<string, Array<[number, number]>>();
  const order: string[] = [];
  for (const row of table.rows) {
    if (errIdx >= 0 && row[errIdx] !== "") continue; // failed point: no data
    const key = gis.length === 0 ? "" :
      gis.map((gi, k) => `${groupCols[k]}=${trimNumeric(row[gi])}`).join(", ");
    const x = Number(row[xi]);
    const y = Number(row[yi]);
    if (!Number.isFinite(x) || !Number.isFinite(y)) continue;
    if (!groups.has(key)) {
      groups.set(key, []);
      order.push(key);
    }
    groups.get(key)!.push([x, y]);
  }
  if (order.length === 0) throw new Error(`no plottable rows in ${source}`);
  return order.map((key) => {
    const pts = groups.get(key)!;
    pts.sort((a, b) => a[0] - b[0]);
    return { label: key === "" ? recipe.y : key, points: pts };
  });
}

function trimNumeric(cell: string): string {
  const v = Number(cell);
  if (!Number.isFinite(v)) return cell;
  return Number(v.toPrecision(6)).toString();
}

export function render(recipe: FigureRecipe, outDir: string, csvDir?: string): RenderResult {
  const csvPath = csvDir != null && !recipe.csv.includes("/")
    ? join(csvDir, recipe.csv)
    : recipe.csv;
  const text = readFileSync(csvPath, "utf-8");
  const curves = extractCurves(recipe, text, basename(csvPath));

  const xs = curves.flatMap((c) => c.points.map((p) => p[0]));
  const ys = curves.flatMap((c) => c.points.map((p) => p[1]));
  let xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  if (recipe.xScale === "log" && xLo <= 0) {
    // a linear sweep that starts at 0 still renders; drop the origin
    xLo = Math.min(...xs.filter((v) => v > 0));
  }
  const xScale = makeScale(recipe.xScale, xLo, xHi);
  const yScale = makeScale("linear", Math.min(...ys, 0), Math.max(...ys));

  const svg = svgDocument(curves, xScale, yScale, recipe.xLabel ?? recipe.x,
    recipe.yLabel ?? recipe.y);

  const layout = DEFAULT_LAYOUT;
  const raster = new Raster(layout.width, layout.height);
  const pw = layout.width - layout.left - layout.right;
  const ph = layout.height - layout.top - layout.bottom;
  raster.rectOutline(layout.left, layout.top, layout.left + pw, layout.top + ph, AXIS_COLOR);
  for (const tick of xScale.ticks()) {
    const x = layout.left + xScale.unit(tick) * pw;
    raster.line(x, layout.top + ph, x, layout.top + ph + 5, AXIS_COLOR);
  }
  for (const tick of yScale.ticks()) {
    const y = layout.top + (1 - yScale.unit(tick)) * ph;
    raster.line(layout.left - 5, y, layout.left, y, AXIS_COLOR);
  }
  curves.forEach((curve, ci) => {
    const color = PALETTE[ci % PALETTE.length];
    const pts = curve.points.filter(([x]) => recipe.xScale !== "log" || x > 0);
    for (let k = 1; k < pts.length; k++) {
      const [x0, y0] = pts[k - 1];
      const [x1, y1] = pts[k];
      raster.line(
        layout.left + xScale.unit(x0) * pw,
        layout.top + (1 - yScale.unit(y0)) * ph,
        layout.left + xScale.unit(x1) * pw,
        layout.top + (1 - yScale.unit(y1)) * ph,
        color,
      );
    }
  });

  mkdirSync(outDir, { recursive: true });
  const svgPath = join(outDir, `${recipe.figure}.svg`);
  const pngPath = join(outDir, `${recipe.figure}.png`);
  writeFileSync(svgPath, svg, "utf-8");
  writeFileSync(pngPath, encodePng(layout.width, layout.height, raster.pixels));
  return {
    figure: recipe.figure,
    svgPath,
    pngPath,
    curveCount: curves.length,
    curveLabels: curves.map((c) => c.label),
    xScale: recipe.xScale,
    pointCount: curves.reduce((acc, c) => acc + c.points.length, 0),
  };
}

export function ensureDir(path: string): void {
  mkdirSync(dirname(path), { recursive: true });
}
