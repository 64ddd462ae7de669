/**
 * Energy-only re-declarations of the 2D surfaces the plots draw contours
 * for. The optimizer package remains the single source of truth for forces
 * and run data; these formulas exist so contour backgrounds can be sampled
 * without shelling out to Python at render time. A test pins each formula
 * against the final_energy recorded in committed run-files, so drift
 * between the two declarations fails loudly.
 */

export interface Surface {
  name: string;
  /** plotting window [xmin, xmax, ymin, ymax] */
  domain: [number, number, number, number];
  /** contour levels drawn inside that window */
  levels: number[];
  energy(x: number, y: number): number;
}

// London-Eyring-Polanyi-Sato three-atom A-B-C surface constants
const LEPS = {
  a: 0.05,
  b: 0.3,
  c: 0.05,
  dAB: 4.746,
  dBC: 4.746,
  dAC: 3.445,
  r0: 0.742,
  alpha: 1.942,
  rACFixed: 3.742,
  kC: 0.2025,
  cScale: 1.154,
};

function coulombQ(r: number, d: number): number {
  const e2 = Math.exp(-2.0 * LEPS.alpha * (r - LEPS.r0));
  const e1 = Math.exp(-LEPS.alpha * (r - LEPS.r0));
  return (d / 2.0) * (1.5 * e2 - e1);
}

function exchangeJ(r: number, d: number): number {
  const e2 = Math.exp(-2.0 * LEPS.alpha * (r - LEPS.r0));
  const e1 = Math.exp(-LEPS.alpha * (r - LEPS.r0));
  return (d / 4.0) * (e2 - 6.0 * e1);
}

function lepsEnergy(rAB: number, rBC: number, rAC: number): number {
  const qa = coulombQ(rAB, LEPS.dAB) / (1.0 + LEPS.a);
  const qb = coulombQ(rBC, LEPS.dBC) / (1.0 + LEPS.b);
  const qc = coulombQ(rAC, LEPS.dAC) / (1.0 + LEPS.c);
  const ja = exchangeJ(rAB, LEPS.dAB) / (1.0 + LEPS.a);
  const jb = exchangeJ(rBC, LEPS.dBC) / (1.0 + LEPS.b);
  const jc = exchangeJ(rAC, LEPS.dAC) / (1.0 + LEPS.c);
  const s = ja * ja + jb * jb + jc * jc - ja * jb - jb * jc - ja * jc;
  return qa + qb + qc - Math.sqrt(Math.max(s, 0.0));
}

const SURFACES: Surface[] = [
  {
    name: "himmelblau",
    domain: [-6, 6, -6, 6],
    levels: [1, 5, 15, 40, 90, 170, 300, 550, 1000, 1800],
    energy(x, y) {
      const p = x * x + y - 11.0;
      const q = x + y * y - 7.0;
      return p * p + q * q;
    },
  },
  {
    name: "booth",
    domain: [-10, 10, -10, 10],
    levels: [2, 10, 40, 120, 300, 700, 1400, 2400],
    energy(x, y) {
      const p = x + 2.0 * y - 7.0;
      const q = 2.0 * x + y - 5.0;
      return p * p + q * q;
    },
  },
  {
    name: "rosenbrock",
    domain: [-2.2, 2.2, -1.2, 3.0],
    levels: [1, 3, 10, 30, 100, 300, 1000, 3000],
    energy(x, y) {
      const r = y - x * x;
      return 100.0 * r * r + (1.0 - x) * (1.0 - x);
    },
  },
  {
    name: "goldstein_price",
    domain: [-2, 2, -2, 2],
    levels: [5, 15, 40, 120, 400, 1500, 6000, 30000, 150000, 600000],
    energy(x, y) {
      const s = x + y + 1.0;
      const a = 19.0 - 14.0 * x + 3.0 * x * x - 14.0 * y + 6.0 * x * y + 3.0 * y * y;
      const t = 2.0 * x - 3.0 * y;
      const b = 18.0 - 32.0 * x + 12.0 * x * x + 48.0 * y - 36.0 * x * y + 27.0 * y * y;
      return (1.0 + s * s * a) * (30.0 + t * t * b);
    },
  },
  {
    // collinear LEPS over (r_AB, r_BC) with r_AC = r_AB + r_BC
    name: "leps1",
    domain: [0.5, 3.5, 0.5, 3.5],
    levels: [-4.4, -4.0, -3.6, -3.2, -2.8, -2.4, -2.0, -1.5, -1.0, -0.5, 0, 1, 2.5],
    energy(rAB, rBC) {
      if (rAB <= 0 || rBC <= 0) return NaN;
      return lepsEnergy(rAB, rBC, rAB + rBC);
    },
  },
  {
    // fixed end-to-end LEPS over (r_AB, x) with a harmonic coupling term
    name: "leps2",
    domain: [0.45, 3.3, -2.5, 2.5],
    levels: [-4.4, -4.0, -3.5, -3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0, 1, 2.5],
    energy(rAB, x) {
      const rBC = LEPS.rACFixed - rAB;
      if (rAB <= 0 || rBC <= 0) return NaN;
      const t = rAB - (LEPS.rACFixed / 2.0 - x / LEPS.cScale);
      return lepsEnergy(rAB, rBC, LEPS.rACFixed) + 2.0 * LEPS.kC * t * t;
    },
  },
];

const REGISTRY = new Map(SURFACES.map((s) => [s.name, s]));

export function lookupSurface(name: string): Surface | undefined {
  return REGISTRY.get(name);
}

export function surfaceNames(): string[] {
  return SURFACES.map((s) => s.name);
}
