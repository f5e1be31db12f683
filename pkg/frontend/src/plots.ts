/**
 * The four figure kinds, each a pure function from parsed artifact data to
 * an SVG string.
 */

import {
  readConvergenceCsv, readNormsCsv, readResolventCsv, readSolveReport,
} from "./schema.js";
import {
  HEIGHT, MARGIN, Scene, WIDTH, color, linearScale, logScale,
} from "./svg.js";

export type FigureKind = "ratios" | "convergence" | "corner" | "resolvent";

export interface FigureSpec {
  kind: FigureKind;
  input: string;
  output: string;
}

const PLOT_X0 = MARGIN.left;
const PLOT_X1 = WIDTH - MARGIN.right;
const PLOT_Y0 = HEIGHT - MARGIN.bottom;
const PLOT_Y1 = MARGIN.top;

export function renderRatios(path: string): string {
  const rows = readNormsCsv(path);
  const scene = new Scene("Norm-equivalence ratio spread per field");
  const ratios = rows.flatMap((r) => {
    const base = r.integral;
    const out = [r.dyadic / base, r.polar / base];
    if (r.mellin !== null) out.push(r.mellin / base);
    return out;
  });
  const lo = Math.min(...ratios, 1) * 0.8;
  const hi = Math.max(...ratios, 1) * 1.2;
  const x = linearScale(-0.5, rows.length - 0.5, PLOT_X0, PLOT_X1);
  const y = logScale(lo, hi, PLOT_Y0, PLOT_Y1);
  x.ticks = [];
  scene.axes(x, y, "field", "norm / integral norm");
  scene.line(PLOT_X0, y(1), PLOT_X1, y(1), 'stroke="#999" stroke-dasharray="4 3"');
  const series: Array<["dyadic" | "polar" | "mellin", number]> = [
    ["dyadic", 0], ["polar", 1], ["mellin", 2]];
  rows.forEach((row, i) => {
    scene.text(x(i), PLOT_Y0 + 32, row.field, 'text-anchor="middle" font-size="11"');
    for (const [name, ci] of series) {
      const value = row[name];
      if (value === null) continue;
      scene.circle(x(i) + (ci - 1) * 7, y(value / row.integral), 4,
        `fill="${color(ci)}"`);
    }
  });
  series.forEach(([name, ci]) => {
    scene.circle(PLOT_X0 + 14, PLOT_Y1 + 12 + 16 * ci, 4, `fill="${color(ci)}"`);
    scene.text(PLOT_X0 + 24, PLOT_Y1 + 16 + 16 * ci, `${name}/integral`,
      'font-size="11"');
  });
  return scene.render();
}

export function renderConvergence(path: string): string {
  const rows = readConvergenceCsv(path);
  const scene = new Scene("Manufactured-solution convergence");
  const xs = rows.map((r) => r.nS);
  const ys = rows.map((r) => r.error);
  const x = logScale(Math.min(...xs) / 1.3, Math.max(...xs) * 1.3, PLOT_X0, PLOT_X1);
  const y = logScale(Math.min(...ys) / 5, Math.max(...ys) * 5, PLOT_Y0, PLOT_Y1);
  scene.axes(x, y, "n_s (log)", "relative L2 error (log)");
  scene.polyline(rows.map((r) => [x(r.nS), y(r.error)]), `stroke="${color(0)}" stroke-width="2"`);
  rows.forEach((r) => scene.circle(x(r.nS), y(r.error), 4, `fill="${color(0)}"`));

  // O(h^2) reference through the first data point
  const ref = rows.map((r) => [x(r.nS),
    y(ys[0] * Math.pow(xs[0] / r.nS, 2))] as [number, number]);
  scene.polyline(ref, `stroke="${color(1)}" stroke-width="1.5" stroke-dasharray="6 4"`);
  scene.text(PLOT_X1 - 8, PLOT_Y1 + 16, "dashed: O(h^2) reference",
    'text-anchor="end" font-size="11"');
  return scene.render();
}

export function renderCorner(path: string): string {
  const report = readSolveReport(path);
  const scene = new Scene("Corner-exponent fit near the vertex");
  const expected = Math.PI / report.kappa;
  // draw both the fitted and the expected power law over two decades of r
  const rLo = 1e-3, rHi = 1e-1;
  const x = logScale(rLo, rHi, PLOT_X0, PLOT_X1);
  const values = [rLo, rHi].flatMap((r) => [
    Math.pow(r / rHi, report.cornerSlope), Math.pow(r / rHi, expected)]);
  const y = logScale(Math.min(...values) / 3, 3, PLOT_Y0, PLOT_Y1);
  scene.axes(x, y, "r (log)", "row norm, normalized (log)");
  const fitted: Array<[number, number]> = [rLo, rHi].map((r) => [
    x(r), y(Math.pow(r / rHi, report.cornerSlope))]);
  const exact: Array<[number, number]> = [rLo, rHi].map((r) => [
    x(r), y(Math.pow(r / rHi, expected))]);
  scene.polyline(fitted, `stroke="${color(0)}" stroke-width="2"`);
  scene.polyline(exact, `stroke="${color(1)}" stroke-width="1.5" stroke-dasharray="6 4"`);
  scene.text(PLOT_X0 + 14, PLOT_Y1 + 16,
    `fitted slope ${report.cornerSlope.toPrecision(5)}`, `font-size="12" fill="${color(0)}"`);
  scene.text(PLOT_X0 + 14, PLOT_Y1 + 32,
    `pi/kappa = ${expected.toPrecision(5)}`, `font-size="12" fill="${color(1)}"`);
  return scene.render();
}

export function renderResolvent(path: string): string {
  const rows = readResolventCsv(path);
  const scene = new Scene("Resolvent-estimate ratio along contours");
  const xsAll = rows.map((r) => r.imLambda);
  const ysAll = rows.map((r) => r.ratio);
  const x = linearScale(Math.min(...xsAll), Math.max(...xsAll), PLOT_X0, PLOT_X1);
  const y = logScale(Math.min(...ysAll) / 2, Math.max(...ysAll) * 2, PLOT_Y0, PLOT_Y1);
  scene.axes(x, y, "Im(lambda)", "estimate ratio (log)");
  const contours = [...new Set(rows.map((r) => r.contour))].sort();
  contours.forEach((name, ci) => {
    const series = rows.filter((r) => r.contour === name);
    scene.polyline(series.map((r) => [x(r.imLambda), y(r.ratio)]),
      `stroke="${color(ci)}" stroke-width="2"`);
    series.forEach((r) => scene.circle(x(r.imLambda), y(r.ratio), 3,
      `fill="${color(ci)}"`));
    scene.text(PLOT_X0 + 24, PLOT_Y1 + 16 + 16 * ci, name, 'font-size="11"');
    scene.circle(PLOT_X0 + 14, PLOT_Y1 + 12 + 16 * ci, 4, `fill="${color(ci)}"`);
  });
  return scene.render();
}

export function renderFigure(spec: FigureSpec): string {
  switch (spec.kind) {
    case "ratios": return renderRatios(spec.input);
    case "convergence": return renderConvergence(spec.input);
    case "corner": return renderCorner(spec.input);
    case "resolvent": return renderResolvent(spec.input);
  }
}
