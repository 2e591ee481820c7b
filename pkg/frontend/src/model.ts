/**
 * Figure specifications and the deterministic plot model they produce.
 *
 * The model is the contract for reproducibility: rendering the same CSVs
 * twice yields byte-identical serialized models (and therefore SVGs).
 */
import type { ProfileTable, TransientTable } from "./schema.js";

export type FigureKind = "profile" | "transient";
export type LineStyle = "solid" | "dashed" | "dotted" | "dashdot";

export interface FigureSpec {
  kind: FigureKind;
  csvPaths: string[];
  out: string;
  /** Include the closed-form prediction curve (profile figures). */
  includePrediction?: boolean;
  /** Override line style per series key (N for profiles, init kind for transients). */
  styleMap?: Record<string, LineStyle>;
  title?: string;
}

export interface Series {
  id: string;
  label: string;
  style: LineStyle;
  points: Array<[number, number]>;
}

export interface PlotModel {
  kind: FigureKind;
  title: string;
  xLabel: string;
  yLabel: string;
  xRange: [number, number];
  yRange: [number, number];
  xTicks: number[];
  yTicks: number[];
  series: Series[];
}

const N_STYLES: LineStyle[] = ["solid", "dashed", "dashdot"];

function round12(v: number): number {
  return Number(v.toPrecision(12));
}

/** Evenly spaced "nice" ticks covering [lo, hi]. */
function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) {
    hi = lo + 1;
  }
  const raw = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const candidates = [1, 2, 2.5, 5, 10].map((c) => c * mag);
  const step = candidates.find((c) => c >= raw) ?? candidates[candidates.length - 1];
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + 1e-12 * step; v += step) {
    ticks.push(round12(Math.abs(v) < 1e-12 * step ? 0 : v));
  }
  return ticks;
}

function padRange(lo: number, hi: number): [number, number] {
  const span = hi > lo ? hi - lo : Math.max(Math.abs(hi), 1);
  return [round12(lo - 0.05 * span), round12(hi + 0.05 * span)];
}

export function buildProfileModel(tables: ProfileTable[], spec: FigureSpec): PlotModel {
  const sorted = [...tables].sort((a, b) => a.n_cells - b.n_cells);
  const includePrediction = spec.includePrediction !== false;
  const series: Series[] = [];

  sorted.forEach((tab, i) => {
    const key = String(tab.n_cells);
    series.push({
      id: `measured_N${tab.n_cells}`,
      label: `N=${tab.n_cells}`,
      style: spec.styleMap?.[key] ?? N_STYLES[i % N_STYLES.length],
      points: tab.rows.map((r) => [round12(r.x), round12(r.measured)]),
    });
  });
  if (includePrediction) {
    const finest = sorted[sorted.length - 1];
    series.push({
      id: "prediction",
      label: "asymptotic profile",
      style: spec.styleMap?.["prediction"] ?? "dotted",
      points: finest.rows.map((r) => [round12(r.x), round12(r.predicted)]),
    });
  }

  const ys = series.flatMap((s) => s.points.map((p) => p[1]));
  const [ylo, yhi] = padRange(Math.min(...ys), Math.max(...ys));
  const k = sorted[0].degree;
  const pow = 2 * k + 1;
  return {
    kind: "profile",
    title: spec.title ?? `scaled cell-average error at t=${sorted[0].t} (k=${k})`,
    xLabel: "x",
    yLabel: `e0 / h^${pow}`,
    xRange: [0, round12(2 * Math.PI)],
    yRange: [ylo, yhi],
    xTicks: niceTicks(0, 2 * Math.PI),
    yTicks: niceTicks(ylo, yhi),
    series,
  };
}

const TRANSIENT_STYLES: LineStyle[] = ["solid", "dashed", "dotted", "dashdot"];

export function buildTransientModel(tables: TransientTable[], spec: FigureSpec): PlotModel {
  // one series per (file, init kind); files ordered as given, kinds sorted
  const series: Series[] = [];
  let styleIdx = 0;
  for (const tab of tables) {
    const kinds = [...new Set(tab.rows.map((r) => r.initKind))].sort();
    const fileTag = tables.length > 1 ? tab.path.replace(/^.*[/\\]/, "") : "";
    for (const kind of kinds) {
      const pts = tab.rows
        .filter((r) => r.initKind === kind)
        .map((r) => [round12(r.t), round12(r.scaledLinf)] as [number, number]);
      series.push({
        id: `${fileTag}:${kind}`.replace(/^:/, ""),
        label: fileTag ? `${kind} (${fileTag})` : kind,
        style: spec.styleMap?.[kind] ?? TRANSIENT_STYLES[styleIdx++ % TRANSIENT_STYLES.length],
        points: pts,
      });
    }
  }
  const xs = series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = series.flatMap((s) => s.points.map((p) => p[1]));
  const [ylo, yhi] = padRange(Math.min(0, ...ys), Math.max(...ys));
  const xhi = Math.max(...xs);
  return {
    kind: "transient",
    title: spec.title ?? "scaled max cell-average error along the trajectory",
    xLabel: "t",
    yLabel: "max_j |e0| / h^(2k+1)",
    xRange: [0, round12(xhi)],
    yRange: [ylo, yhi],
    xTicks: niceTicks(0, xhi),
    yTicks: niceTicks(ylo, yhi),
    series,
  };
}
