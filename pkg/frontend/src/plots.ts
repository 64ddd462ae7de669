/**
 * SVG renderers for recorded runs: relaxation paths over contour maps,
 * force-norm decay curves, and elastic-band evolution. Every renderer is a
 * pure function of the parsed run-files, so re-rendering the same inputs
 * reproduces the output byte for byte.
 */

import { RunRecord, runMeta, runDim } from "./runfile.js";
import { Surface, lookupSurface, surfaceNames } from "./surfaces.js";
import { contourSegments, sampleGrid } from "./contour.js";
import { SvgBuilder, fmt, niceTicks, tickLabel } from "./svg.js";

/** Raised when the run-files lack what the requested plot needs. */
export class PlotInputError extends Error {}

const WIDTH = 640;
const HEIGHT = 480;
const MARGIN = { left: 64, right: 20, top: 34, bottom: 50 };
const GRID_N = 121;

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
const CONTOUR_COLOR = "#c4c4c4";

class Frame {
  readonly innerW = WIDTH - MARGIN.left - MARGIN.right;
  readonly innerH = HEIGHT - MARGIN.top - MARGIN.bottom;

  constructor(
    readonly x0: number,
    readonly x1: number,
    readonly y0: number,
    readonly y1: number,
  ) {}

  px(x: number): number {
    return MARGIN.left + ((x - this.x0) / (this.x1 - this.x0)) * this.innerW;
  }

  py(y: number): number {
    return HEIGHT - MARGIN.bottom - ((y - this.y0) / (this.y1 - this.y0)) * this.innerH;
  }
}

function runId(record: RunRecord): string {
  return record.meta.get("id") ?? "?";
}

function drawFrame(svg: SvgBuilder, frame: Frame, opts: {
  title: string;
  xlabel: string;
  ylabel: string;
  xticks: Array<[number, string]>;
  yticks: Array<[number, string]>;
}): void {
  const left = MARGIN.left;
  const right = WIDTH - MARGIN.right;
  const top = MARGIN.top;
  const bottom = HEIGHT - MARGIN.bottom;
  for (const [x, label] of opts.xticks) {
    const px = frame.px(x);
    svg.line(px, bottom, px, bottom + 5, { stroke: "#000000", "stroke-width": 1 });
    svg.text(px, bottom + 18, label, { "font-size": 11, "text-anchor": "middle", fill: "#000000" });
  }
  for (const [y, label] of opts.yticks) {
    const py = frame.py(y);
    svg.line(left - 5, py, left, py, { stroke: "#000000", "stroke-width": 1 });
    svg.text(left - 8, py + 4, label, { "font-size": 11, "text-anchor": "end", fill: "#000000" });
  }
  svg.rect(left, top, right - left, bottom - top, { fill: "none", stroke: "#000000", "stroke-width": 1 });
  svg.text((left + right) / 2, bottom + 36, opts.xlabel, { "font-size": 13, "text-anchor": "middle", fill: "#000000" });
  svg.text(16, (top + bottom) / 2, opts.ylabel, {
    "font-size": 13,
    "text-anchor": "middle",
    fill: "#000000",
    transform: `rotate(-90 16 ${fmt((top + bottom) / 2)})`,
  });
  svg.text(left, top - 10, opts.title, { "font-size": 14, "text-anchor": "start", fill: "#000000" });
}

function drawContours(svg: SvgBuilder, frame: Frame, surface: Surface): void {
  const grid = sampleGrid(surface.energy, surface.domain, GRID_N, GRID_N);
  for (const level of surface.levels) {
    const segments = contourSegments(grid, level);
    if (segments.length === 0) continue;
    const d = segments
      .map(([ax, ay, bx, by]) => `M${fmt(frame.px(ax))} ${fmt(frame.py(ay))}L${fmt(frame.px(bx))} ${fmt(frame.py(by))}`)
      .join("");
    svg.path(d, { fill: "none", stroke: CONTOUR_COLOR, "stroke-width": 0.8 });
  }
}

function drawLegend(svg: SvgBuilder, entries: Array<{ label: string; color: string }>): void {
  const x = WIDTH - MARGIN.right - 150;
  let y = MARGIN.top + 16;
  for (const { label, color } of entries) {
    svg.line(x, y - 4, x + 22, y - 4, { stroke: color, "stroke-width": 2 });
    svg.text(x + 28, y, label, { "font-size": 12, "text-anchor": "start", fill: "#000000" });
    y += 16;
  }
}

function surfaceFor(record: RunRecord): Surface {
  const name = runMeta(record, "function");
  const surface = lookupSurface(name);
  if (surface === undefined) {
    throw new PlotInputError(
      `no plotting surface for ${name} (have: ${surfaceNames().join(", ")})`);
  }
  return surface;
}

function require2d(record: RunRecord, what: string): void {
  const dim = runDim(record);
  if (dim !== 2) {
    throw new PlotInputError(`run ${runId(record)} is ${dim}-dimensional; ${what} need 2-D coordinates`);
  }
}

function seriesLabels(records: RunRecord[]): string[] {
  const labels = records.map((r) => runMeta(r, "optimizer"));
  return labels.map((label, i) =>
    labels.indexOf(label) === labels.lastIndexOf(label) ? label : `${label} #${i + 1}`);
}

function worldTicks(frame: Frame): { xticks: Array<[number, string]>; yticks: Array<[number, string]> } {
  const xticks = niceTicks(frame.x0, frame.x1).map((v): [number, string] => [v, tickLabel(v)]);
  const yticks = niceTicks(frame.y0, frame.y1).map((v): [number, string] => [v, tickLabel(v)]);
  return { xticks, yticks };
}

/**
 * Relaxation path(s) over the surface's contour map. All runs must be 2-D,
 * recorded with a trajectory, and share one surface; a single-step run
 * renders as a lone end marker.
 */
export function plotTrajectory(records: RunRecord[]): string {
  if (records.length === 0) {
    throw new PlotInputError("no runs to plot");
  }
  const name = runMeta(records[0], "function");
  for (const record of records) {
    const other = runMeta(record, "function");
    if (other !== name) {
      throw new PlotInputError(`runs mix surfaces ${name} and ${other}; plot them separately`);
    }
    require2d(record, "trajectory plots");
    if (record.trajectory.length === 0) {
      throw new PlotInputError(`run ${runId(record)} has no trajectory (re-run with --traj)`);
    }
  }
  const surface = surfaceFor(records[0]);
  const [x0, x1, y0, y1] = surface.domain;
  const frame = new Frame(x0, x1, y0, y1);

  const svg = new SvgBuilder(WIDTH, HEIGHT);
  svg.rect(0, 0, WIDTH, HEIGHT, { fill: "#ffffff" });
  drawContours(svg, frame, surface);
  const labels = seriesLabels(records);
  records.forEach((record, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = record.trajectory.map((t): [number, number] => [frame.px(t.coords[0]), frame.py(t.coords[1])]);
    if (pts.length >= 2) {
      svg.polyline(pts, {
        fill: "none",
        stroke: color,
        "stroke-width": 1.5,
        "stroke-linejoin": "round",
      });
      svg.circle(pts[0][0], pts[0][1], 4, { fill: "#ffffff", stroke: color, "stroke-width": 1.5 });
    }
    const [ex, ey] = pts[pts.length - 1];
    svg.circle(ex, ey, 4, { fill: color, stroke: "none" });
  });
  drawFrame(svg, frame, {
    title: name,
    xlabel: "x1",
    ylabel: "x2",
    ...worldTicks(frame),
  });
  drawLegend(svg, labels.map((label, i) => ({ label, color: PALETTE[i % PALETTE.length] })));
  return svg.toString();
}

/**
 * Force-norm decay against cumulative force evaluations, one labeled series
 * per run, log-scale ordinate. Runs from different surfaces may share the
 * axes; each needs at least one norm-history row.
 */
export function plotNormCurves(records: RunRecord[]): string {
  if (records.length === 0) {
    throw new PlotInputError("no runs to plot");
  }
  let maxEval = 0;
  let loNorm = Infinity;
  let hiNorm = -Infinity;
  for (const record of records) {
    if (record.normHistory.length === 0) {
      throw new PlotInputError(`run ${runId(record)} has an empty norm history`);
    }
    for (const { evals, fnorm } of record.normHistory) {
      maxEval = Math.max(maxEval, evals);
      if (fnorm > 0) {
        loNorm = Math.min(loNorm, fnorm);
        hiNorm = Math.max(hiNorm, fnorm);
      }
    }
  }
  if (!(loNorm <= hiNorm)) {
    throw new PlotInputError("no positive force norms to plot on a log scale");
  }
  const kLo = Math.floor(Math.log10(loNorm));
  const kHi = Math.max(Math.ceil(Math.log10(hiNorm)), kLo + 1);
  const frame = new Frame(0, maxEval, kLo, kHi);

  const svg = new SvgBuilder(WIDTH, HEIGHT);
  svg.rect(0, 0, WIDTH, HEIGHT, { fill: "#ffffff" });
  const yticks: Array<[number, string]> = [];
  const stride = kHi - kLo > 9 ? 2 : 1;
  for (let k = kLo; k <= kHi; k += stride) {
    yticks.push([k, `1e${k}`]);
    svg.line(frame.px(0), frame.py(k), frame.px(maxEval), frame.py(k), {
      stroke: "#e0e0e0",
      "stroke-width": 0.8,
    });
  }
  const labels = seriesLabels(records);
  records.forEach((record, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = record.normHistory.map(({ evals, fnorm }): [number, number] => [
      frame.px(evals),
      frame.py(fnorm > 0 ? Math.log10(fnorm) : kLo), // zero norms sit on the floor
    ]);
    if (pts.length >= 2) {
      svg.polyline(pts, { fill: "none", stroke: color, "stroke-width": 1.5 });
    } else {
      svg.circle(pts[0][0], pts[0][1], 3, { fill: color, stroke: "none" });
    }
  });
  const functions = new Set(records.map((r) => runMeta(r, "function")));
  drawFrame(svg, frame, {
    title: functions.size === 1 ? `${[...functions][0]}: force-norm decay` : "force-norm decay",
    xlabel: "force evaluations",
    ylabel: "|F|",
    xticks: niceTicks(0, maxEval).map((v): [number, string] => [v, tickLabel(v)]),
    yticks,
  });
  drawLegend(svg, labels.map((label, i) => ({ label, color: PALETTE[i % PALETTE.length] })));
  return svg.toString();
}

/**
 * Elastic-band relaxation over the surface's contour map: the initial band
 * in black, the final band in red, and a few evenly spaced intermediate
 * snapshots in grey, each annotated with the cumulative force-evaluation
 * count at which it was assembled.
 */
export function plotBandEvolution(record: RunRecord): string {
  require2d(record, "band plots");
  if (record.band.length === 0) {
    throw new PlotInputError(`run ${runId(record)} has no band snapshots (re-run with --traj)`);
  }
  for (const row of record.band) {
    if (row.coords.length !== 2) {
      throw new PlotInputError(
        `run ${runId(record)} band rows carry ${row.coords.length} coordinates; band plots need 2`);
    }
  }
  const surface = surfaceFor(record);

  // group snapshot rows, preserving file order (assembly ascending)
  const snapshots: Array<{ assembly: number; images: Array<[number, number]> }> = [];
  for (const row of record.band) {
    const last = snapshots[snapshots.length - 1];
    if (last === undefined || last.assembly !== row.assembly) {
      snapshots.push({ assembly: row.assembly, images: [] });
    }
    snapshots[snapshots.length - 1].images.push([row.coords[0], row.coords[1]]);
  }
  if (record.normHistory.length !== snapshots.length) {
    throw new PlotInputError(
      `run ${runId(record)}: ${snapshots.length} band snapshots but ` +
        `${record.normHistory.length} norm-history rows`);
  }

  const n = snapshots.length;
  const want = Math.min(6, n);
  const picked = new Set<number>();
  for (let i = 0; i < want; i++) {
    picked.add(Math.round((i * (n - 1)) / Math.max(want - 1, 1)));
  }
  const drawIdx = [...picked].sort((a, b) => a - b);

  const [x0, x1, y0, y1] = surface.domain;
  const frame = new Frame(x0, x1, y0, y1);
  const svg = new SvgBuilder(WIDTH, HEIGHT);
  svg.rect(0, 0, WIDTH, HEIGHT, { fill: "#ffffff" });
  drawContours(svg, frame, surface);

  for (const idx of drawIdx) {
    const { images } = snapshots[idx];
    const evals = record.normHistory[idx].evals;
    const color = idx === 0 ? "#000000" : idx === n - 1 ? "#d62728" : "#8a8a8a";
    const width = idx === 0 || idx === n - 1 ? 2 : 1.2;
    const pts = images.map(([x, y]): [number, number] => [frame.px(x), frame.py(y)]);
    svg.polyline(pts, { fill: "none", stroke: color, "stroke-width": width });
    for (const [px, py] of pts) {
      svg.circle(px, py, 2.2, { fill: color, stroke: "none" });
    }
    const mid = pts[Math.floor(pts.length / 2)];
    svg.text(mid[0] + 6, mid[1] - 6, String(evals), { "font-size": 11, "text-anchor": "start", fill: color });
  }
  drawFrame(svg, frame, {
    title: `${runMeta(record, "function")} band (${runMeta(record, "images")} images)`,
    xlabel: "x1",
    ylabel: "x2",
    ...worldTicks(frame),
  });
  drawLegend(svg, [
    { label: "initial band", color: "#000000" },
    { label: "final band", color: "#d62728" },
  ]);
  return svg.toString();
}
