/** Figure recipes: how one CSV becomes one plot. */

import { readFileSync } from "node:fs";

export interface FigureRecipe {
  /** figure id, also the output file stem */
  figure: string;
  /** input CSV path (for built-ins: basename resolved against --csv-dir) */
  csv: string;
  x: string;
  xScale: "linear" | "log";
  y: string;
  /** one curve per distinct value (composite keys allowed); empty = one curve */
  groupBy?: string | string[];
  xLabel?: string;
  yLabel?: string;
}

export function loadRecipe(path: string): FigureRecipe {
  const raw = JSON.parse(readFileSync(path, "utf-8"));
  for (const key of ["figure", "csv", "x", "y"]) {
    if (typeof raw[key] !== "string" || raw[key].length === 0) {
      throw new Error(`recipe ${path} is missing the '${key}' field`);
    }
  }
  const xScale = raw.xScale ?? "linear";
  if (xScale !== "linear" && xScale !== "log") {
    throw new Error(`recipe ${path}: xScale must be 'linear' or 'log'`);
  }
  return { ...raw, xScale } as FigureRecipe;
}

const gamma = (figure: string, group: string | string[]): FigureRecipe => ({
  figure,
  csv: `${figure}.csv`,
  x: "l_m",
  xScale: "linear",
  y: "gamma",
  groupBy: group,
  xLabel: "L (m)",
  yLabel: "broadening ratio",
});

const rate = (figure: string, group: string | string[], xScale: "linear" | "log" = "log"):
  FigureRecipe => ({
    figure,
    csv: `${figure}.csv`,
    x: "l_m",
    xScale,
    y: "f_symbol_bd",
    groupBy: group,
    xLabel: "L (m)",
    yLabel: "symbol rate (Bd)",
  });

const keyrate = (figure: string, group: string): FigureRecipe => ({
  figure,
  csv: `${figure}.csv`,
  x: "l_m",
  xScale: "linear",
  y: "key_rate",
  groupBy: group,
  xLabel: "L (m)",
  yLabel: "key rate per signal photon",
});

const qubitPdf = (figure: string, group: string[]): FigureRecipe => ({
  figure,
  csv: `${figure}.csv`,
  x: "t_s",
  xScale: "linear",
  y: "pdf_per_s",
  groupBy: group,
  xLabel: "t (s)",
  yLabel: "arrival-time density (1/s)",
});

/** One recipe per bundled sweep preset, keyed by figure id. */
export const builtinRecipes: Record<string, FigureRecipe> = {
  fig1: gamma("fig1", ["shape_q", "chirp_c"]),
  fig2: gamma("fig2", ["shape_q", "chirp_c"]),
  fig3: gamma("fig3", "shape_q"),
  fig4: gamma("fig4", "shape_q"),
  fig5: rate("fig5", ["shape_q", "chirp_c"]),
  fig6: gamma("fig6", "chirp_c"),
  fig7: gamma("fig7", "chirp_c"),
  fig8: rate("fig8", "chirp_c"),
  fig9: rate("fig9", "chirp_c"),
  fig10: keyrate("fig10", "window_ps"),
  fig11: keyrate("fig11", "chirp_c"),
  fig12: keyrate("fig12", "chirp_c"),
  fig13: gamma("fig13", "medium"),
  fig14: { ...gamma("fig14", "medium"), xScale: "log" },
  fig15: rate("fig15", "medium"),
  fig16: qubitPdf("fig16", ["chirp_c"]),
  fig17: qubitPdf("fig17", ["chirp_c", "l_m"]),
  fig18: gamma("fig18", "chirp_c"),
  fig19: gamma("fig19", "chirp_c"),
  fig20: gamma("fig20", "chirp_c"),
  fig21: gamma("fig21", "chirp_c"),
  fig22: gamma("fig22", "chirp_c"),
  fig23: gamma("fig23", "chirp_c"),
  fig24: rate("fig24", "chirp_c"),
};
