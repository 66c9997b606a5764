/**
 * Semilog area-decay figure with the theoretical exponential bound
 * A(0) * exp(-cg^2 t / (rho0 * L0)) overlaid.
 *
 * cg and L0 default to values derived from the t=0 diagnostics row
 * (cg = 1/sqrt(1 + sup_dplus^2), L0 = length); rho0 must be supplied.
 */
import { CsvFormatError, parseDiagnostics } from "./csv.js";
import {
  CANVAS,
  MARGINS,
  SvgBuilder,
  fmtTick,
  linearScale,
  niceTicks,
} from "./svg.js";

export interface DecayOptions {
  rho0: number;
  cg?: number;
  l0?: number;
}

export interface DecayResult {
  svg: string;
  droppedRows: number;
}

export function renderDecay(
  csvText: string,
  path: string,
  options: DecayOptions
): DecayResult {
  const rows = parseDiagnostics(csvText, path);
  const first = rows[0];
  if (first.t !== 0) {
    throw new CsvFormatError(`${path}: first diagnostics row must be t=0`);
  }
  const cg = options.cg ?? 1 / Math.sqrt(1 + first.supDplus * first.supDplus);
  const l0 = options.l0 ?? first.length;
  const decayRate = (cg * cg) / (options.rho0 * l0);

  const positive = rows.filter((r) => r.area > 0);
  const droppedRows = rows.length - positive.length;
  if (positive.length === 0) {
    throw new CsvFormatError(`${path}: no positive areas to draw on a log scale`);
  }

  const tMax = rows[rows.length - 1].t || 1;
  const bound = (t: number) => first.area * Math.exp(-decayRate * t);
  const logValues = positive.map((r) => Math.log10(r.area));
  const logMin = Math.min(...logValues, Math.log10(bound(tMax)));
  const logMax = Math.max(...logValues, Math.log10(first.area));

  const plotW = CANVAS.width - MARGINS.left - MARGINS.right;
  const plotH = CANVAS.height - MARGINS.top - MARGINS.bottom;
  const x = linearScale(0, tMax, MARGINS.left, MARGINS.left + plotW);
  const y = linearScale(logMin, logMax, MARGINS.top + plotH, MARGINS.top);

  const svg = new SvgBuilder();
  svg.line(MARGINS.left, MARGINS.top + plotH, MARGINS.left + plotW, MARGINS.top + plotH);
  svg.line(MARGINS.left, MARGINS.top + plotH, MARGINS.left, MARGINS.top);
  for (const tick of niceTicks(0, tMax)) {
    svg.line(x(tick), MARGINS.top + plotH, x(tick), MARGINS.top + plotH + 4);
    svg.text(x(tick), MARGINS.top + plotH + 18, fmtTick(tick), {
      anchor: "middle",
    });
  }
  for (const tick of niceTicks(logMin, logMax, 5)) {
    svg.line(MARGINS.left - 4, y(tick), MARGINS.left, y(tick));
    svg.text(MARGINS.left - 8, y(tick) + 4, `1e${fmtTick(tick)}`, {
      anchor: "end",
      size: 10,
    });
  }
  svg.text(MARGINS.left + plotW / 2, CANVAS.height - 12, "t", { anchor: "middle" });
  svg.text(18, MARGINS.top + plotH / 2, "area (log scale)", {
    anchor: "middle",
    rotate: true,
  });
  svg.text(MARGINS.left, 24, "Enclosed area decay vs exponential bound", {
    size: 15,
  });

  // bound curve sampled densely for a smooth line
  const samples = 128;
  const bx: number[] = [];
  const by: number[] = [];
  for (let i = 0; i <= samples; i++) {
    const t = (tMax * i) / samples;
    bx.push(x(t));
    by.push(y(Math.log10(bound(t))));
  }
  svg.polyline(bx, by, "#c23b22", 1.5, "6,4");
  svg.text(bx[Math.floor(samples / 2)] + 6, by[Math.floor(samples / 2)] - 6,
    "bound", { size: 10, color: "#c23b22" });

  svg.polyline(
    positive.map((r) => x(r.t)),
    positive.map((r) => y(Math.log10(r.area))),
    "#14508c",
    2
  );
  svg.text(x(positive[0].t) + 6, y(Math.log10(positive[0].area)) + 14, "area", {
    size: 10,
    color: "#14508c",
  });
  if (droppedRows > 0) {
    svg.text(
      MARGINS.left + plotW,
      24,
      `${droppedRows} zero-area rows dropped`,
      { anchor: "end", size: 10, color: "#888" }
    );
  }
  return { svg: svg.render(), droppedRows };
}
