/** Linear and logarithmic axis scales with tick generation. */

export type ScaleKind = "linear" | "log";

export interface Scale {
  kind: ScaleKind;
  domain: [number, number];
  /** map a data value into [0, 1] */
  unit(v: number): number;
  ticks(count?: number): number[];
}

export function makeScale(kind: ScaleKind, lo: number, hi: number): Scale {
  if (!(hi > lo)) {
    // degenerate domain (single x or flat y): pad so rendering still works
    const pad = lo === 0 ? 1 : Math.abs(lo) * 0.05;
    lo -= pad;
    hi += pad;
  }
  if (kind === "log") {
    if (lo <= 0) throw new Error(`log scale needs positive domain, got [${lo}, ${hi}]`);
    const llo = Math.log10(lo);
    const lhi = Math.log10(hi);
    return {
      kind,
      domain: [lo, hi],
      unit: (v) => (Math.log10(v) - llo) / (lhi - llo),
      ticks: () => {
        const out: number[] = [];
        for (let e = Math.ceil(llo); e <= Math.floor(lhi); e++) out.push(10 ** e);
        return out.length >= 2 ? out : [lo, hi];
      },
    };
  }
  return {
    kind,
    domain: [lo, hi],
    unit: (v) => (v - lo) / (hi - lo),
    ticks: (count = 6) => {
      const span = hi - lo;
      const step = niceStep(span / count);
      const out: number[] = [];
      for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
        out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
      }
      return out;
    },
  };
}

function niceStep(raw: number): number {
  const mag = 10 ** Math.floor(Math.log10(raw));
  const frac = raw / mag;
  if (frac <= 1) return mag;
  if (frac <= 2) return 2 * mag;
  if (frac <= 5) return 5 * mag;
  return 10 * mag;
}
