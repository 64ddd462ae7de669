import * as fs from "fs";
import * as path from "path";
import { fileURLToPath } from "url";
import { describe, expect, it } from "vitest";

import { load, parsePoint, runMeta } from "../src/runfile.js";
import { lookupSurface, surfaceNames } from "../src/surfaces.js";

const HERE = path.dirname(fileURLToPath(import.meta.url));
const FIXTURES = path.join(HERE, "fixtures");

function energyAt(name: string, x: number, y: number): number {
  const surface = lookupSurface(name);
  expect(surface, name).toBeDefined();
  return surface!.energy(x, y);
}

describe("surface catalog", () => {
  it("declares sane windows and strictly increasing levels", () => {
    expect(surfaceNames().length).toBe(6);
    for (const name of surfaceNames()) {
      const s = lookupSurface(name)!;
      const [x0, x1, y0, y1] = s.domain;
      expect(x0).toBeLessThan(x1);
      expect(y0).toBeLessThan(y1);
      for (let i = 1; i < s.levels.length; i++) {
        expect(s.levels[i]).toBeGreaterThan(s.levels[i - 1]);
      }
      for (const [x, y] of [
        [(x0 + x1) / 2, (y0 + y1) / 2],
        [x0, y0],
        [x1, y1],
      ]) {
        expect(Number.isFinite(s.energy(x, y)), `${name} at ${x},${y}`).toBe(true);
      }
    }
  });

  it("reproduces textbook stationary values", () => {
    expect(energyAt("himmelblau", 3, 2)).toBeCloseTo(0, 12);
    expect(energyAt("himmelblau", 0, 0)).toBe(170);
    expect(energyAt("booth", 1, 3)).toBe(0);
    expect(energyAt("rosenbrock", 1, 1)).toBe(0);
    expect(energyAt("goldstein_price", 0, -1)).toBeCloseTo(3, 9);
  });

  it("reproduces the LEPS stationary points", () => {
    // saddle of the collinear surface and the two coupled-surface minima,
    // located independently by the optimizer package's reference oracle
    expect(energyAt("leps1", 1.14937799, 0.86246877)).toBeCloseTo(-3.17691309, 6);
    expect(energyAt("leps2", 0.74135035, 1.3036157)).toBeCloseTo(-4.50603308, 6);
    expect(energyAt("leps2", 3.00095865, -1.30397228)).toBeCloseTo(-3.63422804, 6);
    expect(energyAt("leps2", 1.9303062, -0.06843936)).toBeCloseTo(-1.03482834, 6);
  });

  it("returns NaN outside the physical domain instead of throwing", () => {
    expect(Number.isNaN(energyAt("leps1", -0.1, 1.0))).toBe(true);
    expect(Number.isNaN(energyAt("leps2", 3.8, 0.0))).toBe(true);
  });
});

describe("consistency with recorded runs", () => {
  // The same formulas exist on the Python side as the source of truth for
  // forces; these checks catch any drift between the two declarations.
  const cases = [
    "custom-himmelblau-2d-fire-0,0.run",
    "custom-himmelblau-2d-aare-pr-0,0.run",
    "custom-booth-2d-fire-1,3.run",
  ];

  it.each(cases)("%s: energy at the recorded final point matches", (name) => {
    const record = load(path.join(FIXTURES, name));
    const [x, y] = parsePoint(runMeta(record, "final"));
    const want = Number(runMeta(record, "final_energy"));
    const got = energyAt(runMeta(record, "function"), x, y);
    expect(Math.abs(got - want)).toBeLessThanOrEqual(1e-9 * (1 + Math.abs(want)));
  });

  it("band record: summed interior image energies match final_energy", () => {
    const record = load(path.join(FIXTURES, "custom-leps1-12img-aare-fr-band.run"));
    const flat = parsePoint(runMeta(record, "final"));
    expect(flat.length % 2).toBe(0);
    let total = 0;
    for (let i = 0; i < flat.length; i += 2) {
      total += energyAt("leps1", flat[i], flat[i + 1]);
    }
    const want = Number(runMeta(record, "final_energy"));
    expect(Math.abs(total - want)).toBeLessThanOrEqual(1e-9 * (1 + Math.abs(want)));
  });
});
