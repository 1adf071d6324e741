// Strict reader for the simulator's CSV output.  The producer promises an
// exact header and finite numeric cells, so anything else here is treated
// as a wrong or corrupted file, not something to repair.
import Papa from "papaparse";

export const TRAJECTORY_HEADER = "t_ms,eps_S,eps_I,pol_S,pol_ratio";
export const SWEEP_HEADER = "tau_ms,eps_S,eps_I,pol_S,pol_ratio";

export type TableKind = "trajectory" | "sweep";

const HEADERS: Record<TableKind, string> = {
  trajectory: TRAJECTORY_HEADER,
  sweep: SWEEP_HEADER,
};

export class CsvError extends Error {}

export interface Table {
  kind: TableKind;
  name: string;
  columns: string[];
  data: Map<string, number[]>;
  length: number;
}

/** Parse one CSV document, refusing any deviation from the contract. */
export function parseTable(text: string, kind: TableKind, name: string): Table {
  const expected = HEADERS[kind];
  const newline = text.indexOf("\n");
  const firstLine = (newline < 0 ? text : text.slice(0, newline)).replace(/\r$/, "");
  if (firstLine !== expected) {
    throw new CsvError(
      `${name}: header mismatch: expected "${expected}", got "${firstLine}"`,
    );
  }

  const parsed = Papa.parse<Record<string, unknown>>(text.trim(), {
    header: true,
    dynamicTyping: true,
    skipEmptyLines: true,
  });
  const firstError = parsed.errors[0];
  if (firstError !== undefined) {
    throw new CsvError(`${name}: ${firstError.message}`);
  }
  if (parsed.data.length === 0) {
    throw new CsvError(`${name}: no data rows`);
  }

  const columns = expected.split(",");
  const data = new Map<string, number[]>(columns.map((c) => [c, []]));
  parsed.data.forEach((row, i) => {
    for (const c of columns) {
      const v = row[c];
      if (typeof v !== "number" || !Number.isFinite(v)) {
        throw new CsvError(
          `${name}: row ${i + 2}: ${c} is not a finite number, got ${JSON.stringify(v ?? null)}`,
        );
      }
      data.get(c)!.push(v);
    }
  });
  return { kind, name, columns, data, length: parsed.data.length };
}

export function column(table: Table, name: string): number[] {
  const values = table.data.get(name);
  if (values === undefined) {
    throw new CsvError(`${table.name}: no column "${name}"`);
  }
  return values;
}
