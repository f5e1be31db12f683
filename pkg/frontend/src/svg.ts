/**
 * Minimal deterministic SVG scene builder.
 *
 * No timestamps, no randomness, fixed-precision coordinates: identical
 * inputs always produce byte-identical files, which CI diffs rely on.
 */

export const WIDTH = 640;
export const HEIGHT = 440;
export const MARGIN = { left: 70, right: 24, top: 36, bottom: 52 };

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

export function color(i: number): string {
  return PALETTE[i % PALETTE.length];
}

export function fmt(x: number): string {
  if (!Number.isFinite(x)) throw new Error(`non-finite coordinate ${x}`);
  const s = x.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export function tickLabel(x: number): string {
  if (x === 0) return "0";
  const a = Math.abs(x);
  if (a >= 1e4 || a < 1e-3) return x.toExponential(1).replace("e", "e");
  return String(Number(x.toPrecision(4)));
}

export interface Scale {
  (value: number): number;
  ticks: number[];
}

export function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo || 1;
  const f = ((value: number) => outLo + ((value - lo) / span) * (outHi - outLo)) as Scale;
  const step = niceStep(span / 5);
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-12 * Math.abs(span); t += step) {
    ticks.push(Number(t.toPrecision(12)));
  }
  f.ticks = ticks;
  return f;
}

export function logScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  if (lo <= 0 || hi <= 0) throw new Error("log scale needs positive bounds");
  const la = Math.log10(lo);
  const lb = Math.log10(hi);
  const span = lb - la || 1;
  const f = ((value: number) => outLo + ((Math.log10(value) - la) / span) * (outHi - outLo)) as Scale;
  const ticks: number[] = [];
  for (let d = Math.ceil(la - 1e-9); d <= Math.floor(lb + 1e-9); d += 1) {
    ticks.push(Math.pow(10, d));
  }
  if (ticks.length < 2) {
    f.ticks = [lo, hi];
  } else {
    f.ticks = ticks;
  }
  return f;
}

function niceStep(raw: number): number {
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const unit = raw / mag;
  if (unit < 1.5) return mag;
  if (unit < 3.5) return 2 * mag;
  if (unit < 7.5) return 5 * mag;
  return 10 * mag;
}

export class Scene {
  private parts: string[] = [];

  constructor(readonly title: string) {}

  rect(x: number, y: number, w: number, h: number, style: string): void {
    this.parts.push(`<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ${style}/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, style: string): void {
    this.parts.push(`<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${style}/>`);
  }

  polyline(points: Array<[number, number]>, style: string): void {
    const joined = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polyline fill="none" points="${joined}" ${style}/>`);
  }

  circle(x: number, y: number, r: number, style: string): void {
    this.parts.push(`<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${fmt(r)}" ${style}/>`);
  }

  text(x: number, y: number, content: string, style = ""): void {
    const safe = content.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
    this.parts.push(`<text x="${fmt(x)}" y="${fmt(y)}" ${style}>${safe}</text>`);
  }

  axes(xScale: Scale, yScale: Scale, xLabel: string, yLabel: string): void {
    const { left, right, top, bottom } = MARGIN;
    const x0 = left, x1 = WIDTH - right, y0 = HEIGHT - bottom, y1 = top;
    this.line(x0, y0, x1, y0, 'stroke="#333" stroke-width="1"');
    this.line(x0, y0, x0, y1, 'stroke="#333" stroke-width="1"');
    for (const t of xScale.ticks) {
      const px = xScale(t);
      if (px < x0 - 0.5 || px > x1 + 0.5) continue;
      this.line(px, y0, px, y0 + 5, 'stroke="#333" stroke-width="1"');
      this.text(px, y0 + 18, tickLabel(t), 'text-anchor="middle" font-size="11"');
    }
    for (const t of yScale.ticks) {
      const py = yScale(t);
      if (py > y0 + 0.5 || py < y1 - 0.5) continue;
      this.line(x0 - 5, py, x0, py, 'stroke="#333" stroke-width="1"');
      this.text(x0 - 8, py + 4, tickLabel(t), 'text-anchor="end" font-size="11"');
    }
    this.text((x0 + x1) / 2, HEIGHT - 12, xLabel, 'text-anchor="middle" font-size="13"');
    this.text(16, (y0 + y1) / 2, yLabel,
      `text-anchor="middle" font-size="13" transform="rotate(-90 16 ${fmt((y0 + y1) / 2)})"`);
  }

  render(): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
      `<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
      `<text x="${WIDTH / 2}" y="22" text-anchor="middle" font-size="15" font-weight="bold">${this.title}</text>`,
      ...this.parts,
      "</svg>",
      "",
    ].join("\n");
  }
}
