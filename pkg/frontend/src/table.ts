/**
 * Fixed-width convergence table (markdown). Number fields are carried
 * verbatim from the CSV so the rendered table reproduces the study's
 * digits exactly; empty fields render as "-".
 */
import { parseConvergence } from "./csv.js";

export function renderTable(csvText: string, path: string): string {
  const rows = parseConvergence(csvText, path);
  const header = ["delta_u", "log2 Linf error", "rate"];
  const body = rows.map((row) => [
    row.deltaU,
    row.log2Error === "" ? "-" : row.log2Error,
    row.rate === "" ? "-" : row.rate,
  ]);
  const widths = header.map((h, col) =>
    Math.max(h.length, ...body.map((cells) => cells[col].length))
  );
  const pad = (text: string, width: number) => text.padStart(width);
  const lines = [
    `| ${header.map((h, c) => pad(h, widths[c])).join(" | ")} |`,
    `| ${widths.map((w) => "-".repeat(w)).join(" | ")} |`,
    ...body.map(
      (cells) => `| ${cells.map((v, c) => pad(v, widths[c])).join(" | ")} |`
    ),
  ];
  return lines.join("\n") + "\n";
}
