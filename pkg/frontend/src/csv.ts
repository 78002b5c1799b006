/**
 * Minimal CSV reader for the simulator's result files.
 *
 * The emitter writes plain comma-separated UTF-8 with a header row and no
 * quoting, so no quote handling is needed here.
 */

export interface Table {
  columns: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV: no header row");
  }
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((line) => line.split(","));
  for (const row of rows) {
    if (row.length !== columns.length) {
      throw new Error(
        `malformed CSV row: expected ${columns.length} fields, got ${row.length}`,
      );
    }
  }
  return { columns, rows };
}

/** Column indices for `needed`, failing with the missing column's name. */
export function requireColumns(
  table: Table,
  needed: string[],
  kind: string,
): Map<string, number> {
  const index = new Map<string, number>();
  for (const name of needed) {
    const at = table.columns.indexOf(name);
    if (at < 0) {
      throw new Error(`missing column '${name}' for ${kind} input`);
    }
    index.set(name, at);
  }
  return index;
}

export function assertNonEmpty(table: Table, kind: string): void {
  if (table.rows.length === 0) {
    throw new Error(`empty CSV: ${kind} input has no data rows`);
  }
}

/** Numeric cell access; NaN cells are rejected eagerly. */
export function num(row: string[], at: number): number {
  const value = Number(row[at]);
  if (Number.isNaN(value)) {
    throw new Error(`non-numeric cell '${row[at]}'`);
  }
  return value;
}

/** Stable unique values in first-appearance order. */
export function uniqueInOrder(values: string[]): string[] {
  const seen = new Set<string>();
  const out: string[] = [];
  for (const v of values) {
    if (!seen.has(v)) {
      seen.add(v);
      out.push(v);
    }
  }
  return out;
}
