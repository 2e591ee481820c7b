import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { test } from "node:test";

import { CsvError, parseProfileCsv, parseTransientCsv } from "../src/schema.js";

const FIXTURES = fileURLToPath(new URL("../../test/fixtures/", import.meta.url));

function fixture(name: string): string {
  return readFileSync(FIXTURES + name, "utf8");
}

test("valid profile fixture parses with metadata", () => {
  const tab = parseProfileCsv(fixture("profile_ex1_k1_N40_c0.csv"), "p.csv");
  assert.equal(tab.n_cells, 40);
  assert.equal(tab.degree, 1);
  assert.equal(tab.t, 1);
  assert.equal(tab.rows.length, 40);
  assert.ok(Number.isFinite(tab.rows[0].measured));
});

test("valid transient fixture parses with both init kinds", () => {
  const tab = parseTransientCsv(fixture("transient_ex3_k2_N40.csv"), "t.csv");
  const kinds = new Set(tab.rows.map((r) => r.initKind));
  assert.ok(kinds.has("l2"));
  assert.ok(kinds.has("gauss_radau"));
});

test("missing column is reported by name", () => {
  const bad = "x_j,measured_scaled_error,t,N,k\n0.1,0.2,1,8,1\n";
  assert.throws(
    () => parseProfileCsv(bad, "bad.csv"),
    (err: unknown) =>
      err instanceof CsvError && err.column === "predicted_scaled_error",
  );
});

test("unexpected column is reported by name", () => {
  const bad = "t,scaled_linf,init_kind,bogus\n0.1,0.2,l2,9\n";
  assert.throws(
    () => parseTransientCsv(bad, "bad.csv"),
    (err: unknown) => err instanceof CsvError && err.column === "bogus",
  );
});

test("non-numeric cell is reported with column and line", () => {
  const bad =
    "x_j,measured_scaled_error,predicted_scaled_error,t,N,k\n" +
    "0.1,0.2,0.3,1,8,1\n" +
    "0.2,oops,0.3,1,8,1\n";
  assert.throws(
    () => parseProfileCsv(bad, "bad.csv"),
    (err: unknown) =>
      err instanceof CsvError &&
      err.column === "measured_scaled_error" &&
      err.line === 3,
  );
});

test("empty file is a clean error", () => {
  assert.throws(() => parseProfileCsv("", "empty.csv"), CsvError);
  assert.throws(() => parseProfileCsv("\n\n", "empty.csv"), CsvError);
});

test("header-only file is a clean error", () => {
  const headerOnly = "t,scaled_linf,init_kind\n";
  assert.throws(() => parseTransientCsv(headerOnly, "h.csv"), CsvError);
});
