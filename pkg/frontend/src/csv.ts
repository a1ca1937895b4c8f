/** Parsers for the ensemble and exponent CSV files emitted by trawlsim. */

export interface Ensemble {
  times: number[];
  paths: number[][];
  kind: string;
}

export interface ExponentRow {
  T: number;
  F_T: number;
  I_T: number;
  I_limit: number;
  rel_gap: number;
  regime: string;
  tol_achieved: number;
}

function parseFloatStrict(cell: string, context: string): number {
  const v = Number(cell);
  if (!Number.isFinite(v)) {
    throw new Error(`${context}: not a finite number: ${JSON.stringify(cell)}`);
  }
  return v;
}

/**
 * Ensemble CSV: optional `#`-comment provenance lines, a `time,...` header
 * row, then one path per row with a leading path index.
 */
export function parseEnsembleCsv(text: string, name = "ensemble"): Ensemble {
  let kind = "unknown";
  let times: number[] | null = null;
  const paths: number[][] = [];
  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (line.length === 0) continue;
    if (line.startsWith("#")) {
      const m = line.match(/kind=(\S+)/);
      if (m) kind = m[1];
      continue;
    }
    const cells = line.split(",");
    if (times === null) {
      if (cells[0] !== "time") {
        throw new Error(`${name}: expected 'time' header row, got ${cells[0]}`);
      }
      times = cells.slice(1).map((c, i) =>
        parseFloatStrict(c, `${name}: header column ${i + 1}`));
      continue;
    }
    const row = cells.slice(1).map((c, i) =>
      parseFloatStrict(c, `${name}: row ${paths.length}, column ${i + 1}`));
    if (row.length !== times.length) {
      throw new Error(`${name}: row ${paths.length} has ${row.length} values, `
        + `expected ${times.length}`);
    }
    paths.push(row);
  }
  if (times === null) throw new Error(`${name}: missing header row`);
  if (paths.length === 0) throw new Error(`${name}: no path rows`);
  return { times, paths, kind };
}

const EXPONENT_HEADER = "T,F_T,I_T,I_limit,rel_gap,regime,tol_achieved";

export function parseExponentCsv(text: string, name = "exponent"):
    ExponentRow[] {
  const lines = text.split("\n").map((l) => l.trim()).filter((l) => l);
  if (lines.length === 0 || lines[0] !== EXPONENT_HEADER) {
    throw new Error(`${name}: expected header ${EXPONENT_HEADER}`);
  }
  const rows: ExponentRow[] = [];
  for (const line of lines.slice(1)) {
    const c = line.split(",");
    if (c.length !== 7) throw new Error(`${name}: malformed row: ${line}`);
    rows.push({
      T: parseFloatStrict(c[0], name),
      F_T: parseFloatStrict(c[1], name),
      I_T: parseFloatStrict(c[2], name),
      I_limit: parseFloatStrict(c[3], name),
      rel_gap: parseFloatStrict(c[4], name),
      regime: c[5],
      tol_achieved: parseFloatStrict(c[6], name),
    });
  }
  if (rows.length === 0) throw new Error(`${name}: no data rows`);
  return rows;
}
