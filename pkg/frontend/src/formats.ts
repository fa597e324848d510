/**
 * Readers for the two external formats of the simulation package:
 * sweep CSVs and plain-text field files. These renderers never compute
 * energies; the emitting package is the single source of truth.
 */

import Papa from "papaparse";

export interface SweepRecord {
  mu: number;
  k: number;
  l: number;
  n: number;
  pad: number;
  mode: string;
  wall: number;
  potential: number;
  magnetostatic: number;
  magnetostriction: number;
  total: number;
  seconds: number;
}

export const CSV_COLUMNS = [
  "mu", "k", "l", "n", "pad", "mode", "wall", "potential",
  "magnetostatic", "magnetostriction", "total", "seconds",
] as const;

export function parseSweepCsv(text: string): SweepRecord[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new Error(`sweep csv parse error: ${parsed.errors[0].message}`);
  }
  const fields = parsed.meta.fields ?? [];
  const missing = CSV_COLUMNS.filter((c) => !fields.includes(c));
  if (missing.length > 0) {
    throw new Error(`sweep csv is missing columns: ${missing.join(", ")}`);
  }
  return parsed.data.map((row, i) => {
    const num = (key: string): number => {
      const v = Number(row[key]);
      if (!Number.isFinite(v)) {
        throw new Error(`sweep csv row ${i + 1}: ${key} is not a number`);
      }
      return v;
    };
    return {
      mu: num("mu"), k: num("k"), l: num("l"), n: num("n"), pad: num("pad"),
      mode: row["mode"], wall: num("wall"), potential: num("potential"),
      magnetostatic: num("magnetostatic"),
      magnetostriction: num("magnetostriction"),
      total: num("total"), seconds: num("seconds"),
    };
  });
}

export interface SpinField {
  kind: "spin";
  n: number;
  pad: number;
  values: number[][]; // well labels 0..3, row index = x index
}

export interface VectorField {
  kind: "vector";
  n: number;
  pad: number;
  values: [number, number][][];
}

export interface ScalarField {
  kind: "scalar";
  n: number;
  pad: number;
  values: number[][];
}

export type Field = SpinField | VectorField | ScalarField;

export function parseFieldFile(text: string): Field {
  const newline = text.indexOf("\n");
  if (newline < 0) throw new Error("field file has no body");
  let header: unknown;
  try {
    header = JSON.parse(text.slice(0, newline));
  } catch {
    throw new Error("field file: first line is not a JSON header");
  }
  if (typeof header !== "object" || header === null ||
      !("kind" in header) || !("n" in header)) {
    throw new Error("field file: header must carry 'kind' and 'n'");
  }
  const kind = (header as { kind: unknown }).kind;
  if (kind !== "spin" && kind !== "vector" && kind !== "scalar") {
    throw new Error(`field file: unknown kind ${JSON.stringify(kind)}`);
  }
  const n = Number((header as { n: unknown }).n);
  const pad = Number((header as { pad?: unknown }).pad ?? 8);
  if (!Number.isInteger(n) || n < 2) {
    throw new Error(`field file: bad grid size ${n}`);
  }
  const body = text.slice(newline + 1).trim().split(/\s+/).filter((t) => t);
  const perRow = kind === "vector" ? 2 * n : n;
  if (body.length !== n * perRow) {
    throw new Error(
      `field file: expected ${n * perRow} values for kind '${kind}' ` +
      `at n=${n}, found ${body.length}`);
  }
  const nums = body.map((t, i) => {
    const v = Number(t);
    if (!Number.isFinite(v)) throw new Error(`field file: bad value at ${i}`);
    return v;
  });
  if (kind === "spin") {
    const values: number[][] = [];
    for (let i = 0; i < n; i++) {
      const row = nums.slice(i * n, (i + 1) * n);
      if (row.some((v) => !Number.isInteger(v) || v < 0 || v > 3)) {
        throw new Error(`field file: spin row ${i} has labels outside 0..3`);
      }
      values.push(row);
    }
    return { kind, n, pad, values };
  }
  if (kind === "scalar") {
    const values: number[][] = [];
    for (let i = 0; i < n; i++) values.push(nums.slice(i * n, (i + 1) * n));
    return { kind, n, pad, values };
  }
  const values: [number, number][][] = [];
  for (let i = 0; i < n; i++) {
    const row: [number, number][] = [];
    for (let j = 0; j < n; j++) {
      row.push([nums[i * 2 * n + 2 * j], nums[i * 2 * n + 2 * j + 1]]);
    }
    values.push(row);
  }
  return { kind, n, pad, values };
}
