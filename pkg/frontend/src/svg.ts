/**
 * Plot model to SVG. Pure string assembly with fixed-precision coordinates,
 * so identical models yield identical bytes.
 */
import type { PlotModel, Series } from "./model.js";

const WIDTH = 760;
const HEIGHT = 480;
const MARGIN = { left: 72, right: 24, top: 40, bottom: 48 };
const PALETTE = ["#1b1b1b", "#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400"];
const DASH: Record<string, string> = {
  solid: "",
  dashed: "9 5",
  dotted: "2 4",
  dashdot: "10 4 2 4",
};

function fmt(v: number): string {
  return v.toFixed(2);
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1000 || a < 0.01) return v.toExponential(1);
  return String(Number(v.toPrecision(4)));
}

export function renderSvg(model: PlotModel): string {
  const iw = WIDTH - MARGIN.left - MARGIN.right;
  const ih = HEIGHT - MARGIN.top - MARGIN.bottom;
  const [x0, x1] = model.xRange;
  const [y0, y1] = model.yRange;
  const sx = (x: number) => MARGIN.left + ((x - x0) / (x1 - x0)) * iw;
  const sy = (y: number) => MARGIN.top + ih - ((y - y0) / (y1 - y0)) * ih;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${fmt(WIDTH / 2)}" y="22" font-size="15" text-anchor="middle">${escapeXml(model.title)}</text>`,
  );

  // frame
  parts.push(
    `<rect x="${fmt(MARGIN.left)}" y="${fmt(MARGIN.top)}" width="${fmt(iw)}" height="${fmt(ih)}" ` +
      `fill="none" stroke="#444444" stroke-width="1"/>`,
  );

  // ticks and grid
  for (const t of model.xTicks) {
    if (t < x0 - 1e-12 || t > x1 + 1e-12) continue;
    const X = sx(t);
    parts.push(
      `<line x1="${fmt(X)}" y1="${fmt(MARGIN.top)}" x2="${fmt(X)}" y2="${fmt(MARGIN.top + ih)}" ` +
        `stroke="#dddddd" stroke-width="0.6"/>`,
    );
    parts.push(
      `<text x="${fmt(X)}" y="${fmt(MARGIN.top + ih + 18)}" font-size="11" ` +
        `text-anchor="middle">${fmtTick(t)}</text>`,
    );
  }
  for (const t of model.yTicks) {
    if (t < y0 - 1e-12 || t > y1 + 1e-12) continue;
    const Y = sy(t);
    parts.push(
      `<line x1="${fmt(MARGIN.left)}" y1="${fmt(Y)}" x2="${fmt(MARGIN.left + iw)}" y2="${fmt(Y)}" ` +
        `stroke="#dddddd" stroke-width="0.6"/>`,
    );
    parts.push(
      `<text x="${fmt(MARGIN.left - 6)}" y="${fmt(Y + 4)}" font-size="11" ` +
        `text-anchor="end">${fmtTick(t)}</text>`,
    );
  }

  // axis labels
  parts.push(
    `<text x="${fmt(MARGIN.left + iw / 2)}" y="${fmt(HEIGHT - 10)}" font-size="13" ` +
      `text-anchor="middle">${escapeXml(model.xLabel)}</text>`,
  );
  parts.push(
    `<text x="16" y="${fmt(MARGIN.top + ih / 2)}" font-size="13" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${fmt(MARGIN.top + ih / 2)})">${escapeXml(model.yLabel)}</text>`,
  );

  // series
  model.series.forEach((s, i) => {
    parts.push(seriesPath(s, i, sx, sy));
  });

  // legend
  const lx = MARGIN.left + 12;
  let ly = MARGIN.top + 14;
  model.series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const dash = DASH[s.style] ? ` stroke-dasharray="${DASH[s.style]}"` : "";
    parts.push(
      `<line x1="${fmt(lx)}" y1="${fmt(ly - 4)}" x2="${fmt(lx + 30)}" y2="${fmt(ly - 4)}" ` +
        `stroke="${color}" stroke-width="1.6"${dash}/>`,
    );
    parts.push(
      `<text x="${fmt(lx + 36)}" y="${fmt(ly)}" font-size="11">${escapeXml(s.label)}</text>`,
    );
    ly += 16;
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

function seriesPath(
  s: Series,
  idx: number,
  sx: (x: number) => number,
  sy: (y: number) => number,
): string {
  const color = PALETTE[idx % PALETTE.length];
  const dash = DASH[s.style] ? ` stroke-dasharray="${DASH[s.style]}"` : "";
  const d = s.points.map(([x, y], i) => `${i === 0 ? "M" : "L"}${fmt(sx(x))} ${fmt(sy(y))}`).join(" ");
  return `<path d="${d}" fill="none" stroke="${color}" stroke-width="1.6"${dash}/>`;
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
