/**
 * End-to-end figure rendering: validate CSVs, build the plot model, emit
 * SVG. Nothing is written until every input has validated, so a schema
 * failure never leaves a partial image behind.
 */
import { readFileSync, writeFileSync } from "node:fs";

import { buildProfileModel, buildTransientModel, type FigureSpec, type PlotModel } from "./model.js";
import { CsvError, parseProfileCsv, parseTransientCsv } from "./schema.js";
import { renderSvg } from "./svg.js";

export interface RenderResult {
  model: PlotModel;
  svg: string;
}

export function buildFigure(spec: FigureSpec): RenderResult {
  if (spec.csvPaths.length === 0) {
    throw new CsvError("no input CSV files given", "<spec>");
  }
  let model: PlotModel;
  if (spec.kind === "profile") {
    const tables = spec.csvPaths.map((p) => parseProfileCsv(readFileSync(p, "utf8"), p));
    model = buildProfileModel(tables, spec);
  } else if (spec.kind === "transient") {
    const tables = spec.csvPaths.map((p) => parseTransientCsv(readFileSync(p, "utf8"), p));
    model = buildTransientModel(tables, spec);
  } else {
    throw new CsvError(`unknown figure kind "${spec.kind}"`, "<spec>");
  }
  return { model, svg: renderSvg(model) };
}

export function renderFigure(spec: FigureSpec, modelOut?: string): RenderResult {
  const result = buildFigure(spec);
  writeFileSync(spec.out, result.svg);
  if (modelOut) {
    writeFileSync(modelOut, JSON.stringify(result.model, null, 1) + "\n");
  }
  return result;
}
