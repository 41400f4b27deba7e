#!/usr/bin/env node
/** pdlab-figures: render sweep CSVs into SVG + PNG plots.
 *
 *   render --recipe FILE [--out-dir DIR]
 *   render --all --csv-dir DIR --out-dir DIR
 *
 * Exit codes: 0 success, 1 usage error, 2 render failure.
 */

import { existsSync } from "node:fs";
import { join } from "node:path";

import { builtinRecipes, loadRecipe } from "./recipes.js";
import { render } from "./render.js";

function usage(): never {
  process.stderr.write(
    "usage: pdlab-figures render --recipe FILE [--out-dir DIR]\n" +
      "       pdlab-figures render --all --csv-dir DIR --out-dir DIR\n",
  );
  process.exit(1);
}

interface Args {
  all: boolean;
  recipe?: string;
  csvDir?: string;
  outDir: string;
}

function parseArgs(argv: string[]): Args {
  if (argv[0] !== "render") usage();
  const args: Args = { all: false, outDir: "plots" };
  for (let i = 1; i < argv.length; i++) {
    switch (argv[i]) {
      case "--all":
        args.all = true;
        break;
      case "--recipe":
        args.recipe = argv[++i];
        break;
      case "--csv-dir":
        args.csvDir = argv[++i];
        break;
      case "--out-dir":
        args.outDir = argv[++i];
        break;
      default:
        process.stderr.write(`unknown argument: ${argv[i]}\n`);
        usage();
    }
  }
  if (!args.all && args.recipe == null) usage();
  if (args.all && args.csvDir == null) usage();
  return args;
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch {
    return 1;
  }
  try {
    if (args.all) {
      const found: string[] = [];
      for (const [name, recipe] of Object.entries(builtinRecipes)) {
        const csvPath = join(args.csvDir!, recipe.csv);
        if (!existsSync(csvPath)) continue;
        const res = render(recipe, args.outDir, args.csvDir);
        found.push(name);
        process.stdout.write(
          `${res.figure}: ${res.curveCount} curves -> ${res.svgPath}, ${res.pngPath}\n`,
        );
      }
      if (found.length === 0) {
        process.stderr.write(`no known figure CSVs under ${args.csvDir}\n`);
        return 2;
      }
      return 0;
    }
    const recipe = loadRecipe(args.recipe!);
    const res = render(recipe, args.outDir);
    process.stdout.write(
      `${res.figure}: ${res.curveCount} curves -> ${res.svgPath}, ${res.pngPath}\n`,
    );
    return 0;
  } catch (err) {
    process.stderr.write(`render failed: ${(err as Error).message}\n`);
    return 2;
  }
}

const invokedDirectly = process.argv[1] != null &&
  import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
