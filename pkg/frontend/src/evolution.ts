/**
 * Leading-edge evolution figure: every snapshot curve overlaid on one
 * equal-aspect axes, labelled by time.
 */
import { CsvFormatError, parseSnapshots } from "./csv.js";
import {
  CANVAS,
  MARGINS,
  SvgBuilder,
  curveColor,
  fmtTick,
  linearScale,
  niceTicks,
} from "./svg.js";

export function renderEvolution(csvText: string, path: string): string {
  const curves = parseSnapshots(csvText, path);
  if (curves.length < 2) {
    throw new CsvFormatError(
      `${path}: need at least 2 snapshots to draw an evolution, got ${curves.length}`
    );
  }

  const uMax = Math.max(...curves.map((c) => Math.max(...c.u)));
  const hMax = Math.max(...curves.map((c) => Math.max(...c.h)), 1e-12);
  const plotW = CANVAS.width - MARGINS.left - MARGINS.right;
  const plotH = CANVAS.height - MARGINS.top - MARGINS.bottom;

  // equal aspect: one unit of u spans as many pixels as one unit of h
  const pixelsPerUnit = Math.min(plotW / uMax, plotH / hMax);
  const x = linearScale(0, uMax, MARGINS.left, MARGINS.left + pixelsPerUnit * uMax);
  const yBase = MARGINS.top + plotH;
  const y = linearScale(0, hMax, yBase, yBase - pixelsPerUnit * hMax);

  const svg = new SvgBuilder();
  svg.line(MARGINS.left, yBase, MARGINS.left + plotW, yBase);
  svg.line(MARGINS.left, yBase, MARGINS.left, MARGINS.top);
  for (const tick of niceTicks(0, uMax)) {
    svg.line(x(tick), yBase, x(tick), yBase + 4);
    svg.text(x(tick), yBase + 18, fmtTick(tick), { anchor: "middle" });
  }
  for (const tick of niceTicks(0, hMax, 5)) {
    svg.line(MARGINS.left - 4, y(tick), MARGINS.left, y(tick));
    svg.text(MARGINS.left - 8, y(tick) + 4, fmtTick(tick), { anchor: "end" });
  }
  svg.text(MARGINS.left + plotW / 2, CANVAS.height - 12, "u", {
    anchor: "middle",
  });
  svg.text(18, MARGINS.top + plotH / 2, "h", { anchor: "middle", rotate: true });
  svg.text(MARGINS.left, 24, "Leading-edge evolution", { size: 15 });

  curves.forEach((curve, i) => {
    const color = curveColor(i, curves.length);
    svg.polyline(curve.u.map(x), curve.h.map(y), color);
    const labelIndex = Math.floor(curve.u.length / 8);
    svg.text(
      x(curve.u[labelIndex]),
      y(curve.h[labelIndex]) - 4,
      `t=${curve.tLabel}`,
      { size: 10, color }
    );
  });
  return svg.render();
}
