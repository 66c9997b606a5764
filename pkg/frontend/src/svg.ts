/**
 * Minimal deterministic SVG scaffolding: fixed canvas, linear/log axes,
 * polylines, labels. No randomness, no timestamps, so a given input
 * always renders byte-identical output.
 */

export interface Margins {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const CANVAS = { width: 760, height: 480 };
export const MARGINS: Margins = { top: 40, right: 24, bottom: 52, left: 64 };

export interface Scale {
  (value: number): number;
}

export function linearScale(
  domainMin: number,
  domainMax: number,
  rangeMin: number,
  rangeMax: number
): Scale {
  const span = domainMax - domainMin || 1;
  return (value) =>
    rangeMin + ((value - domainMin) / span) * (rangeMax - rangeMin);
}

export function niceTicks(min: number, max: number, count = 6): number[] {
  const span = max - min || 1;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const scaled = span / count / step;
  const mult = scaled >= 5 ? 10 : scaled >= 2 ? 5 : scaled >= 1 ? 2 : 1;
  const tick = mult * step;
  const start = Math.ceil(min / tick) * tick;
  const ticks: number[] = [];
  for (let v = start; v <= max + tick * 1e-9; v += tick) {
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

export function fmtTick(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e5 || abs < 1e-3) return value.toExponential(1);
  return String(Number(value.toPrecision(6)));
}

export class SvgBuilder {
  private parts: string[] = [];

  constructor(width = CANVAS.width, height = CANVAS.height) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`
    );
    this.parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  }

  polyline(
    xs: number[],
    ys: number[],
    color: string,
    width = 1.5,
    dash?: string
  ): void {
    const pts = xs
      .map((x, i) => `${x.toFixed(2)},${ys[i].toFixed(2)}`)
      .join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="${width}"${dashAttr}/>`
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, color = "#444"): void {
    this.parts.push(
      `<line x1="${x1.toFixed(2)}" y1="${y1.toFixed(2)}" x2="${x2.toFixed(
        2
      )}" y2="${y2.toFixed(2)}" stroke="${color}" stroke-width="1"/>`
    );
  }

  text(
    x: number,
    y: number,
    content: string,
    opts: { size?: number; anchor?: string; color?: string; rotate?: boolean } = {}
  ): void {
    const size = opts.size ?? 12;
    const anchor = opts.anchor ?? "start";
    const color = opts.color ?? "#222";
    const transform = opts.rotate
      ? ` transform="rotate(-90 ${x.toFixed(2)} ${y.toFixed(2)})"`
      : "";
    this.parts.push(
      `<text x="${x.toFixed(2)}" y="${y.toFixed(2)}" font-size="${size}" ` +
        `text-anchor="${anchor}" fill="${color}"${transform}>${escapeXml(content)}</text>`
    );
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

/** Colour ramp for an indexed family of curves, dark to light blue. */
export function curveColor(index: number, total: number): string {
  const t = total <= 1 ? 0 : index / (total - 1);
  const channel = (from: number, to: number) =>
    Math.round(from + (to - from) * t);
  return `rgb(${channel(20, 140)},${channel(60, 180)},${channel(120, 235)})`;
}
