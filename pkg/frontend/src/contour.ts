/**
 * Marching-squares contour extraction on a regularly sampled grid.
 * Segments are emitted cell by cell in scan order, so the output is a pure
 * function of (surface, grid size, level) — no seeding or joining heuristics.
 */

export interface Grid {
  xs: number[];
  ys: number[];
  /** row-major values[iy * xs.length + ix] */
  values: Float64Array;
}

export function sampleGrid(
  f: (x: number, y: number) => number,
  domain: [number, number, number, number],
  nx: number,
  ny: number,
): Grid {
  const [x0, x1, y0, y1] = domain;
  const xs = new Array<number>(nx);
  const ys = new Array<number>(ny);
  for (let i = 0; i < nx; i++) xs[i] = x0 + ((x1 - x0) * i) / (nx - 1);
  for (let j = 0; j < ny; j++) ys[j] = y0 + ((y1 - y0) * j) / (ny - 1);
  const values = new Float64Array(nx * ny);
  for (let j = 0; j < ny; j++) {
    for (let i = 0; i < nx; i++) {
      values[j * nx + i] = f(xs[i], ys[j]);
    }
  }
  return { xs, ys, values };
}

/** One contour segment in world coordinates: [x1, y1, x2, y2]. */
export type Segment = [number, number, number, number];

// cell edges: 0 bottom (a-b), 1 right (b-c), 2 top (d-c), 3 left (a-d)
// corner bits: a=1 (x0,y0), b=2 (x1,y0), c=4 (x1,y1), d=8 (x0,y1)
const EDGE_TABLE: ReadonlyArray<ReadonlyArray<[number, number]>> = [
  [], // 0
  [[3, 0]], // a
  [[0, 1]], // b
  [[3, 1]], // ab
  [[1, 2]], // c
  [], // ac: ambiguous, resolved at runtime
  [[0, 2]], // bc
  [[3, 2]], // abc
];

function interp(level: number, va: number, vb: number): number {
  return vb === va ? 0.5 : (level - va) / (vb - va);
}

export function contourSegments(grid: Grid, level: number): Segment[] {
  const { xs, ys, values } = grid;
  const nx = xs.length;
  const segments: Segment[] = [];
  for (let j = 0; j < ys.length - 1; j++) {
    for (let i = 0; i < nx - 1; i++) {
      const va = values[j * nx + i];
      const vb = values[j * nx + i + 1];
      const vc = values[(j + 1) * nx + i + 1];
      const vd = values[(j + 1) * nx + i];
      if (!isFinite(va) || !isFinite(vb) || !isFinite(vc) || !isFinite(vd)) {
        continue;
      }
      let idx = 0;
      if (va > level) idx |= 1;
      if (vb > level) idx |= 2;
      if (vc > level) idx |= 4;
      if (vd > level) idx |= 8;
      if (idx === 0 || idx === 15) continue;

      const x0 = xs[i];
      const x1 = xs[i + 1];
      const y0 = ys[j];
      const y1 = ys[j + 1];
      // crossing point on each cell edge, lazily meaningful only when used
      const pts: Array<[number, number]> = [
        [x0 + interp(level, va, vb) * (x1 - x0), y0],
        [x1, y0 + interp(level, vb, vc) * (y1 - y0)],
        [x0 + interp(level, vd, vc) * (x1 - x0), y1],
        [x0, y0 + interp(level, va, vd) * (y1 - y0)],
      ];

      let pairs: ReadonlyArray<[number, number]>;
      if (idx === 5 || idx === 10) {
        // saddle cell: connect by the sign of the center average
        const centerHigh = (va + vb + vc + vd) / 4.0 > level;
        if (idx === 5) {
          pairs = centerHigh ? [[3, 2], [0, 1]] : [[3, 0], [1, 2]];
        } else {
          pairs = centerHigh ? [[3, 0], [1, 2]] : [[0, 1], [3, 2]];
        }
      } else {
        pairs = idx < 8 ? EDGE_TABLE[idx] : EDGE_TABLE[15 - idx];
      }
      for (const [e1, e2] of pairs) {
        segments.push([pts[e1][0], pts[e1][1], pts[e2][0], pts[e2][1]]);
      }
    }
  }
  return segments;
}
