/**
 * CSV schemas emitted by the dgadvect CLI, with strict validation.
 *
 * Every parse failure names the offending file, line, and column so a bad
 * artifact is diagnosable from the error message alone.
 */

export class CsvError extends Error {
  constructor(
    message: string,
    readonly file: string,
    readonly column?: string,
    readonly line?: number,
  ) {
    super(message);
    this.name = "CsvError";
  }
}

export interface ProfileRow {
  x: number;
  measured: number;
  predicted: number;
  t: number;
  n_cells: number;
  degree: number;
}

export interface TransientRow {
  t: number;
  scaledLinf: number;
  initKind: string;
}

export interface ProfileTable {
  path: string;
  rows: ProfileRow[];
  n_cells: number;
  degree: number;
  t: number;
}

export interface TransientTable {
  path: string;
  rows: TransientRow[];
}

const PROFILE_HEADER = ["x_j", "measured_scaled_error", "predicted_scaled_error", "t", "N", "k"];
const TRANSIENT_HEADER = ["t", "scaled_linf", "init_kind"];

function splitCsv(text: string, path: string): { header: string[]; rows: string[][] } {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new CsvError(`${path}: file is empty`, path);
  }
  const header = lines[0].split(",").map((c) => c.trim());
  const rows = lines.slice(1).map((l) => l.split(",").map((c) => c.trim()));
  if (rows.length === 0) {
    throw new CsvError(`${path}: no data rows`, path);
  }
  return { header, rows };
}

function checkHeader(header: string[], expected: string[], path: string): void {
  for (const col of expected) {
    if (!header.includes(col)) {
      throw new CsvError(`${path}: missing required column "${col}"`, path, col);
    }
  }
  for (const col of header) {
    if (!expected.includes(col)) {
      throw new CsvError(`${path}: unexpected column "${col}"`, path, col);
    }
  }
}

function numberAt(
  cells: string[],
  idx: number,
  col: string,
  path: string,
  line: number,
): number {
  const raw = cells[idx];
  if (raw === undefined) {
    throw new CsvError(`${path}: line ${line}: missing value in column "${col}"`, path, col, line);
  }
  const v = Number(raw);
  if (raw === "" || Number.isNaN(v)) {
    throw new CsvError(
      `${path}: line ${line}: cannot parse "${raw}" in column "${col}" as a number`,
      path,
      col,
      line,
    );
  }
  return v;
}

export function parseProfileCsv(text: string, path: string): ProfileTable {
  const { header, rows } = splitCsv(text, path);
  checkHeader(header, PROFILE_HEADER, path);
  const ix = Object.fromEntries(header.map((c, i) => [c, i]));
  const out: ProfileRow[] = rows.map((cells, r) => ({
    x: numberAt(cells, ix["x_j"], "x_j", path, r + 2),
    measured: numberAt(cells, ix["measured_scaled_error"], "measured_scaled_error", path, r + 2),
    predicted: numberAt(cells, ix["predicted_scaled_error"], "predicted_scaled_error", path, r + 2),
    t: numberAt(cells, ix["t"], "t", path, r + 2),
    n_cells: numberAt(cells, ix["N"], "N", path, r + 2),
    degree: numberAt(cells, ix["k"], "k", path, r + 2),
  }));
  return { path, rows: out, n_cells: out[0].n_cells, degree: out[0].degree, t: out[0].t };
}

export function parseTransientCsv(text: string, path: string): TransientTable {
  const { header, rows } = splitCsv(text, path);
  checkHeader(header, TRANSIENT_HEADER, path);
  const ix = Object.fromEntries(header.map((c, i) => [c, i]));
  const out: TransientRow[] = rows.map((cells, r) => {
    const kind = cells[ix["init_kind"]];
    if (!kind) {
      throw new CsvError(
        `${path}: line ${r + 2}: missing value in column "init_kind"`,
        path,
        "init_kind",
        r + 2,
      );
    }
    return {
      t: numberAt(cells, ix["t"], "t", path, r + 2),
      scaledLinf: numberAt(cells, ix["scaled_linf"], "scaled_linf", path, r + 2),
      initKind: kind,
    };
  });
  return { path, rows: out };
}
