/**
 * Strict readers for the three dcflow CSV formats.
 *
 * Every reader validates the header and field count and throws a
 * CsvFormatError naming the offending line, so truncated or foreign
 * files fail cleanly instead of rendering garbage.
 */

export class CsvFormatError extends Error {}

export interface SnapshotPoint {
  t: number;
  u: number;
  h: number;
}

/** One snapshot curve: all points sharing a time value, in file order. */
export interface SnapshotCurve {
  t: number;
  tLabel: string;
  u: number[];
  h: number[];
}

export interface DiagnosticsRow {
  t: number;
  supH: number;
  supDplus: number;
  length: number;
  area: number;
}

/** Convergence row with the number fields kept verbatim as strings. */
export interface ConvergenceRow {
  level: string;
  n: string;
  deltaU: string;
  log2Error: string;
  rate: string;
}

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

function splitLines(text: string, path: string): string[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvFormatError(`${path}: file is empty`);
  }
  return lines;
}

function requireHeader(lines: string[], expected: string, path: string): void {
  if (lines[0] !== expected) {
    throw new CsvFormatError(
      `${path}: expected header '${expected}', got '${lines[0]}'`
    );
  }
}

function parseNumber(field: string, path: string, lineno: number): number {
  const value = Number(field);
  if (field.trim() === "" || !Number.isFinite(value)) {
    throw new CsvFormatError(
      `${path}:${lineno}: expected a finite number, got '${field}'`
    );
  }
  return value;
}

// ---------------------------------------------------------------------------
// readers
// ---------------------------------------------------------------------------

export function parseSnapshots(text: string, path: string): SnapshotCurve[] {
  const lines = splitLines(text, path);
  requireHeader(lines, "t,u,h", path);
  if (lines.length === 1) {
    throw new CsvFormatError(`${path}: no snapshot rows`);
  }
  const curves: SnapshotCurve[] = [];
  let current: SnapshotCurve | null = null;
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== 3) {
      throw new CsvFormatError(
        `${path}:${i + 1}: expected 3 fields, got ${fields.length}`
      );
    }
    const [tRaw, uRaw, hRaw] = fields;
    const t = parseNumber(tRaw, path, i + 1);
    const u = parseNumber(uRaw, path, i + 1);
    const h = parseNumber(hRaw, path, i + 1);
    if (current === null || current.tLabel !== tRaw) {
      current = { t, tLabel: tRaw, u: [], h: [] };
      curves.push(current);
    }
    current.u.push(u);
    current.h.push(h);
  }
  const count = curves[0].u.length;
  for (const curve of curves) {
    if (curve.u.length !== count) {
      throw new CsvFormatError(
        `${path}: snapshot at t=${curve.tLabel} has ${curve.u.length} points, expected ${count}`
      );
    }
  }
  return curves;
}

export function parseDiagnostics(text: string, path: string): DiagnosticsRow[] {
  const lines = splitLines(text, path);
  requireHeader(lines, "t,sup_h,sup_dplus,length,area", path);
  if (lines.length === 1) {
    throw new CsvFormatError(`${path}: no diagnostics rows`);
  }
  const rows: DiagnosticsRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== 5) {
      throw new CsvFormatError(
        `${path}:${i + 1}: expected 5 fields, got ${fields.length}`
      );
    }
    const [t, supH, supDplus, length, area] = fields.map((f) =>
      parseNumber(f, path, i + 1)
    );
    rows.push({ t, supH, supDplus, length, area });
  }
  return rows;
}

export function parseConvergence(text: string, path: string): ConvergenceRow[] {
  const lines = splitLines(text, path);
  requireHeader(lines, "level,n,delta_u,log2_linf_error,rate", path);
  if (lines.length === 1) {
    throw new CsvFormatError(`${path}: no convergence rows`);
  }
  const rows: ConvergenceRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== 5) {
      throw new CsvFormatError(
        `${path}:${i + 1}: expected 5 fields, got ${fields.length}`
      );
    }
    const [level, n, deltaU, log2Error, rate] = fields;
    // the error/rate columns may be empty (reference and first rows)
    parseNumber(level, path, i + 1);
    parseNumber(n, path, i + 1);
    parseNumber(deltaU, path, i + 1);
    if (log2Error !== "") parseNumber(log2Error, path, i + 1);
    if (rate !== "") parseNumber(rate, path, i + 1);
    rows.push({ level, n, deltaU, log2Error, rate });
  }
  return rows;
}
