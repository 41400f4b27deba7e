import assert from "node:assert/strict";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { test } from "node:test";

import { encodePng } from "../src/png.js";
import { extractCurves, render } from "../src/render.js";
import type { FigureRecipe } from "../src/recipes.js";

const FIXTURE_CSV = [
  "experiment,medium,sigma_ps,chirp_c,l_m,sigma_l_s,gamma,error",
  "figX,air,4.25,0.0,0.0,4.25e-12,1.0,",
  "figX,air,4.25,0.0,1.0,4.26e-12,1.002,",
  "figX,air,4.25,0.0,2.0,4.30e-12,1.01,",
  "figX,air,4.25,1.0,0.0,4.25e-12,1.0,",
  "figX,air,4.25,1.0,1.0,4.20e-12,0.99,",
  "figX,air,4.25,1.0,2.0,4.10e-12,0.97,",
  'figX,air,4.25,1.0,3.0,,,"grid too small, really"',
  "",
].join("\n");

const RECIPE: FigureRecipe = {
  figure: "figX",
  csv: "figX.csv",
  x: "l_m",
  xScale: "linear",
  y: "gamma",
  groupBy: "chirp_c",
};

test("extractCurves groups by column and drops error rows", () => {
  const curves = extractCurves(RECIPE, FIXTURE_CSV, "figX.csv");
  assert.equal(curves.length, 2);
  assert.deepEqual(curves.map((c) => c.label), ["chirp_c=0", "chirp_c=1"]);
  assert.equal(curves[1].points.length, 3); // the failed row is excluded
});

test("empty group-by yields a single curve", () => {
  const curves = extractCurves({ ...RECIPE, groupBy: undefined }, FIXTURE_CSV, "x");
  assert.equal(curves.length, 1);
  assert.equal(curves[0].points.length, 6);
});

test("missing column is reported by name", () => {
  assert.throws(
    () => extractCurves({ ...RECIPE, y: "key_rate" }, FIXTURE_CSV, "figX.csv"),
    /column 'key_rate' not found/,
  );
});

test("render writes SVG and PNG and reports curve metadata", () => {
  const dir = mkdtempSync(join(tmpdir(), "figtest-"));
  writeFileSync(join(dir, "figX.csv"), FIXTURE_CSV);
  const res = render(RECIPE, dir, dir);
  assert.equal(res.curveCount, 2);
  const svg = readFileSync(res.svgPath, "utf-8");
  assert.equal((svg.match(/<polyline /g) ?? []).length, 2);
  assert.ok(svg.includes("chirp_c=1"));
  const png = readFileSync(res.pngPath);
  assert.deepEqual([...png.subarray(0, 8)], [137, 80, 78, 71, 13, 10, 26, 10]);
});

test("re-rendering is byte-identical", () => {
  const dir = mkdtempSync(join(tmpdir(), "figtest-"));
  writeFileSync(join(dir, "figX.csv"), FIXTURE_CSV);
  const a = render(RECIPE, dir, dir);
  const png1 = readFileSync(a.pngPath);
  const svg1 = readFileSync(a.svgPath, "utf-8");
  const b = render(RECIPE, dir, dir);
  assert.deepEqual(readFileSync(b.pngPath), png1);
  assert.equal(readFileSync(b.svgPath, "utf-8"), svg1);
});

test("png encoder validates buffer size", () => {
  assert.throws(() => encodePng(10, 10, new Uint8Array(3)), /expected 400/);
});
