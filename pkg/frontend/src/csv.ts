/**
 * Strict readers for the two experiment CSV schemas.
 *
 * Both readers validate the header up front and fail with the name of the
 * first missing column, then parse rows with line-numbered errors. Files
 * are consumed as text; callers keep ownership of the underlying file.
 */

import Papa from "papaparse";

export class SchemaError extends Error {}

export interface RegretRecord {
  agent: string;
  param: string;
  trial: number;
  period: number;
  regret: number;
  cumRegret: number;
}

export interface RdRecord {
  method: string;
  param: number;
  rateBits: number;
  distortion: number;
}

export const REGRET_COLUMNS = [
  "agent",
  "param",
  "trial",
  "period",
  "regret",
  "cum_regret",
] as const;

export const RD_COLUMNS = ["method", "param", "rate_bits", "distortion"] as const;

interface Table {
  header: string[];
  rows: string[][];
}

function tokenize(text: string, source: string): Table {
  if (text.trim() === "") {
    throw new SchemaError(`${source}: empty file, expected a header row`);
  }
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0]!;
    throw new SchemaError(`${source}: malformed CSV (${first.message})`);
  }
  const [header, ...rows] = parsed.data;
  return { header: header ?? [], rows };
}

function columnIndices(
  table: Table,
  required: readonly string[],
  source: string,
): Map<string, number> {
  const indices = new Map<string, number>();
  table.header.forEach((name, i) => indices.set(name, i));
  for (const name of required) {
    if (!indices.has(name)) {
      throw new SchemaError(`${source}: missing column '${name}'`);
    }
  }
  return indices;
}

function cell(row: string[], index: number): string {
  return row[index] ?? "";
}

function toNumber(raw: string, column: string, line: number, source: string): number {
  const value = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(value)) {
    throw new SchemaError(
      `${source}:${line}: column '${column}' has non-numeric value ${JSON.stringify(raw)}`,
    );
  }
  return value;
}

function toInt(raw: string, column: string, line: number, source: string): number {
  const value = toNumber(raw, column, line, source);
  if (!Number.isInteger(value)) {
    throw new SchemaError(
      `${source}:${line}: column '${column}' expected an integer, got ${JSON.stringify(raw)}`,
    );
  }
  return value;
}

/** Parse harness regret records; header-only input yields an empty list. */
export function readRegretCsv(text: string, source = "<regret csv>"): RegretRecord[] {
  const table = tokenize(text, source);
  const at = columnIndices(table, REGRET_COLUMNS, source);
  return table.rows.map((row, i) => {
    const line = i + 2; // header is line 1
    return {
      agent: cell(row, at.get("agent")!),
      param: cell(row, at.get("param")!),
      trial: toInt(cell(row, at.get("trial")!), "trial", line, source),
      period: toInt(cell(row, at.get("period")!), "period", line, source),
      regret: toNumber(cell(row, at.get("regret")!), "regret", line, source),
      cumRegret: toNumber(cell(row, at.get("cum_regret")!), "cum_regret", line, source),
    };
  });
}

/** Parse target-comparison records; header-only input yields an empty list. */
export function readRdCsv(text: string, source = "<rd csv>"): RdRecord[] {
  const table = tokenize(text, source);
  const at = columnIndices(table, RD_COLUMNS, source);
  return table.rows.map((row, i) => {
    const line = i + 2;
    return {
      method: cell(row, at.get("method")!),
      param: toNumber(cell(row, at.get("param")!), "param", line, source),
      rateBits: toNumber(cell(row, at.get("rate_bits")!), "rate_bits", line, source),
      distortion: toNumber(cell(row, at.get("distortion")!), "distortion", line, source),
    };
  });
}
