import { readFileSync } from "node:fs";
import Papa from "papaparse";

/** Raised for anything wrong with an input CSV; the CLI maps it to exit 2. */
export class PlotInputError extends Error {}

export interface CsvTable {
  path: string;
  header: string[];
  rows: string[][];
}

/**
 * Read a CSV file into header + string rows.
 *
 * A file with no data rows (including a zero-byte file or a lone header
 * line) is rejected outright: there is nothing to plot, and writing an
 * empty figure would hide the problem.
 */
export function readCsvTable(path: string): CsvTable {
  let content: string;
  try {
    content = readFileSync(path, "utf8");
  } catch (err) {
    throw new PlotInputError(`cannot read ${path}: ${(err as Error).message}`);
  }
  if (content.trim() === "") {
    throw new PlotInputError(`no data in ${path}`);
  }
  const parsed = Papa.parse<string[]>(content.trim(), {
    delimiter: ",",
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new PlotInputError(`${path}: malformed CSV (${e.message})`);
  }
  const lines = parsed.data;
  if (lines.length === 0 || (lines.length === 1 && lines[0].every((c) => c === ""))) {
    throw new PlotInputError(`no data in ${path}`);
  }
  const header = lines[0].map((c) => c.trim());
  const rows = lines.slice(1);
  if (rows.length === 0) {
    throw new PlotInputError(`no data in ${path} (header only)`);
  }
  const bad = rows.findIndex((r) => r.length !== header.length);
  if (bad >= 0) {
    throw new PlotInputError(
      `${path}: row ${bad + 2} has ${rows[bad].length} fields, expected ${header.length}`,
    );
  }
  return { path, header, rows };
}

/** Index of a named column, or a loud error naming the missing column. */
export function columnIndex(table: CsvTable, name: string): number {
  const i = table.header.indexOf(name);
  if (i < 0) {
    throw new PlotInputError(
      `missing column "${name}" in ${table.path} (found: ${table.header.join(", ")})`,
    );
  }
  return i;
}

export function requireColumns(table: CsvTable, names: string[]): void {
  for (const name of names) columnIndex(table, name);
}

export function numberColumn(table: CsvTable, name: string): number[] {
  const i = columnIndex(table, name);
  return table.rows.map((row, r) => {
    const v = Number(row[i]);
    if (row[i].trim() === "" || Number.isNaN(v)) {
      throw new PlotInputError(
        `${table.path}: row ${r + 2}, column "${name}" is not a number: ${JSON.stringify(row[i])}`,
      );
    }
    return v;
  });
}

export function stringColumn(table: CsvTable, name: string): string[] {
  const i = columnIndex(table, name);
  return table.rows.map((row) => row[i]);
}
