import assert from "node:assert/strict";
import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { test } from "node:test";

import { buildFigure, renderFigure } from "../src/render.js";
import { CsvError } from "../src/schema.js";
import type { FigureSpec } from "../src/model.js";

const FIXTURES = fileURLToPath(new URL("../../test/fixtures/", import.meta.url));
const OUT = mkdtempSync(join(tmpdir(), "dgfig-"));

function fx(...names: string[]): string[] {
  return names.map((n) => FIXTURES + n);
}

// the four golden figure setups: smooth profile with prediction, kinked
// profile without it, transient comparison, vector component profile
const FIGURES: Array<[string, FigureSpec]> = [
  [
    "smooth profile + prediction",
    {
      kind: "profile",
      csvPaths: fx("profile_ex1_k1_N20_c0.csv", "profile_ex1_k1_N40_c0.csv"),
      out: join(OUT, "fig1.svg"),
    },
  ],
  [
    "kinked-data profile, three resolutions, no prediction",
    {
      kind: "profile",
      csvPaths: fx(
        "profile_ex2_k1_N20_c0.csv",
        "profile_ex2_k1_N40_c0.csv",
        "profile_ex2_k1_N80_c0.csv",
      ),
      out: join(OUT, "fig2.svg"),
      includePrediction: false,
      styleMap: { "20": "solid", "40": "dashdot", "80": "dashed" },
    },
  ],
  [
    "transient comparison across initializations",
    {
      kind: "transient",
      csvPaths: fx("transient_ex3_k2_N20.csv", "transient_ex3_k2_N40.csv"),
      out: join(OUT, "fig3.svg"),
    },
  ],
  [
    "vector component profile + per-wave prediction",
    {
      kind: "profile",
      csvPaths: fx("profile_ex4_k3_N20_c0.csv", "profile_ex4_k3_N40_c0.csv"),
      out: join(OUT, "fig4.svg"),
    },
  ],
];

for (const [name, spec] of FIGURES) {
  test(`renders: ${name}`, () => {
    const { model, svg } = renderFigure(spec);
    assert.ok(existsSync(spec.out));
    assert.ok(svg.startsWith("<svg"));
    assert.ok(svg.includes("</svg>"));
    const paths = svg.match(/<path /g) ?? [];
    assert.equal(paths.length, model.series.length);
    const written = readFileSync(spec.out, "utf8");
    assert.equal(written, svg);
  });
}

test("expected series structure per figure", () => {
  const fig1 = buildFigure(FIGURES[0][1]).model;
  assert.deepEqual(
    fig1.series.map((s) => s.id),
    ["measured_N20", "measured_N40", "prediction"],
  );
  assert.equal(fig1.series[2].style, "dotted");

  const fig2 = buildFigure(FIGURES[1][1]).model;
  assert.equal(fig2.series.length, 3); // no prediction curve
  assert.deepEqual(
    fig2.series.map((s) => s.style),
    ["solid", "dashdot", "dashed"],
  );

  const fig3 = buildFigure(FIGURES[2][1]).model;
  assert.equal(fig3.series.length, 4); // two files x two init kinds
});

test("re-rendering yields an identical plot model and SVG", () => {
  const a = buildFigure(FIGURES[0][1]);
  const b = buildFigure(FIGURES[0][1]);
  assert.equal(JSON.stringify(a.model), JSON.stringify(b.model));
  assert.equal(a.svg, b.svg);
});

test("model serialization is written next to the figure on request", () => {
  const spec = { ...FIGURES[2][1], out: join(OUT, "fig3b.svg") };
  const modelPath = join(OUT, "fig3b.model.json");
  renderFigure(spec, modelPath);
  const model = JSON.parse(readFileSync(modelPath, "utf8"));
  assert.equal(model.kind, "transient");
  assert.ok(Array.isArray(model.series));
});

test("malformed CSV fails cleanly without writing a partial image", () => {
  const badCsv = join(OUT, "bad.csv");
  writeFileSync(badCsv, "x_j,measured_scaled_error\n0.1,0.2\n");
  const out = join(OUT, "never.svg");
  assert.throws(
    () => renderFigure({ kind: "profile", csvPaths: [badCsv], out }),
    CsvError,
  );
  assert.ok(!existsSync(out));
});

test("empty CSV fails cleanly without writing a partial image", () => {
  const emptyCsv = join(OUT, "empty.csv");
  writeFileSync(emptyCsv, "");
  const out = join(OUT, "never2.svg");
  assert.throws(
    () => renderFigure({ kind: "transient", csvPaths: [emptyCsv], out }),
    CsvError,
  );
  assert.ok(!existsSync(out));
});
