/**
 * Parsing and validation of the wedgemellin CSV/JSON artifacts.
 *
 * Every reader checks the producing schema strictly and throws SchemaError
 * with a descriptive message on any mismatch, so a plot run never writes a
 * figure from malformed input.
 */

import { readFileSync } from "node:fs";

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export interface CsvTable {
  comments: string[];
  header: string[];
  rows: string[][];
}

export function readCsv(path: string, expectedHeader: string[]): CsvTable {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new SchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const lines = text.split(/\r?\n/).filter((ln) => ln.length > 0);
  const comments = lines.filter((ln) => ln.startsWith("#"));
  const body = lines.filter((ln) => !ln.startsWith("#"));
  if (body.length === 0) {
    throw new SchemaError(`${path}: no header row`);
  }
  const header = body[0].split(",");
  if (header.join(",") !== expectedHeader.join(",")) {
    throw new SchemaError(
      `${path}: header mismatch; expected "${expectedHeader.join(",")}" ` +
      `but found "${header.join(",")}"`);
  }
  const rows = body.slice(1).map((ln, i) => {
    const cells = ln.split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(`${path}: row ${i + 1} has ${cells.length} cells, ` +
        `expected ${header.length}`);
    }
    return cells;
  });
  if (rows.length === 0) {
    throw new SchemaError(`${path}: no data rows`);
  }
  return { comments, header, rows };
}

export function num(table: CsvTable, row: string[], column: string, path: string): number {
  const idx = table.header.indexOf(column);
  const value = Number(row[idx]);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`${path}: non-numeric value "${row[idx]}" in column ${column}`);
  }
  return value;
}

// -- concrete artifact readers ---------------------------------------------

export interface NormsRow {
  field: string;
  dyadic: number;
  integral: number;
  polar: number;
  mellin: number | null;
  ratioMax: number;
  ratioMin: number;
}

export function readNormsCsv(path: string): NormsRow[] {
  const table = readCsv(path, ["field_name", "gamma", "p", "Theta", "theta",
    "dyadic", "integral", "polar", "mellin", "ratio_max", "ratio_min"]);
  return table.rows.map((row) => ({
    field: row[0],
    dyadic: num(table, row, "dyadic", path),
    integral: num(table, row, "integral", path),
    polar: num(table, row, "polar", path),
    mellin: row[table.header.indexOf("mellin")] === ""
      ? null : num(table, row, "mellin", path),
    ratioMax: num(table, row, "ratio_max", path),
    ratioMin: num(table, row, "ratio_min", path),
  }));
}

export interface ConvergenceRow {
  nS: number;
  nPhi: number;
  error: number;
  aprioriRatio: number;
}

export function readConvergenceCsv(path: string): ConvergenceRow[] {
  const table = readCsv(path, ["n_s", "n_phi", "error", "apriori_ratio"]);
  return table.rows.map((row) => ({
    nS: num(table, row, "n_s", path),
    nPhi: num(table, row, "n_phi", path),
    error: num(table, row, "error", path),
    aprioriRatio: num(table, row, "apriori_ratio", path),
  }));
}

export interface ResolventRow {
  contour: string;
  offset: number;
  imLambda: number;
  ratio: number;
}

export function readResolventCsv(path: string): ResolventRow[] {
  const table = readCsv(path, ["contour", "offset", "im_lambda", "ratio"]);
  return table.rows.map((row) => ({
    contour: row[0],
    offset: num(table, row, "offset", path),
    imLambda: num(table, row, "im_lambda", path),
    ratio: num(table, row, "ratio", path),
  }));
}

export interface SolveReport {
  kappa: number;
  cornerSlope: number;
  residual: number;
  aprioriRatio: number;
}

export function readSolveReport(path: string): SolveReport {
  let payload: Record<string, unknown>;
  try {
    payload = JSON.parse(readFileSync(path, "utf8"));
  } catch (err) {
    throw new SchemaError(`cannot parse ${path}: ${(err as Error).message}`);
  }
  for (const key of ["kappa", "corner_slope", "residual", "apriori_ratio"]) {
    if (typeof payload[key] !== "number") {
      throw new SchemaError(`${path}: missing or non-numeric key "${key}"`);
    }
  }
  return {
    kappa: payload["kappa"] as number,
    cornerSlope: payload["corner_slope"] as number,
    residual: payload["residual"] as number,
    aprioriRatio: payload["apriori_ratio"] as number,
  };
}
