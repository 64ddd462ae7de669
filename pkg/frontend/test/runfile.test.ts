import * as fs from "fs";
import * as path from "path";
import { fileURLToPath } from "url";
import { describe, expect, it } from "vitest";

import { dumps, load, parse, parsePoint, runDim, runMeta, RunfileError } from "../src/runfile.js";

const HERE = path.dirname(fileURLToPath(import.meta.url));
const FIXTURES = path.join(HERE, "fixtures");

const ALL_FIXTURES = fs.readdirSync(FIXTURES).filter((f) => f.endsWith(".run")).sort();

const MINI = [
  "pesmin-run 1",
  "created: 2024-01-01T00:00:00+00:00",
  "command: test",
  "[run]",
  "id: t/quad/2d/fire/0,0",
  "function: himmelblau",
  "dim: 2",
  "optimizer: fire",
  "n_force_evals: 2",
  "[norm_history]",
  "eval,fnorm",
  "1,2.0",
  "2,0.5",
  "[events]",
  "step,kind,info",
  "[end]",
  "",
].join("\n");

describe("parse/dumps round trip", () => {
  it("re-emits every committed fixture byte for byte", () => {
    expect(ALL_FIXTURES.length).toBeGreaterThanOrEqual(8);
    for (const name of ALL_FIXTURES) {
      const text = fs.readFileSync(path.join(FIXTURES, name), "utf-8");
      expect(dumps(parse(text)), name).toBe(text);
    }
  });

  it("round-trips a minimal handwritten file", () => {
    expect(dumps(parse(MINI))).toBe(MINI);
  });

  it("is idempotent when sections arrive out of canonical order", () => {
    const weird = MINI.replace(
      "[norm_history]\neval,fnorm\n1,2.0\n2,0.5\n[events]\nstep,kind,info\n",
      "[events]\nstep,kind,info\n[norm_history]\neval,fnorm\n1,2.0\n2,0.5\n",
    );
    expect(weird).not.toBe(MINI);
    const once = dumps(parse(weird));
    expect(once).toBe(MINI); // normalized to canonical section order
    expect(dumps(parse(once))).toBe(once);
  });

  it("drops an empty trajectory section on re-write, then stays fixed", () => {
    const weird = MINI.replace("[events]", "[trajectory]\neval,x1,x2\n[events]");
    const once = dumps(parse(weird));
    expect(once).toBe(MINI);
    expect(dumps(parse(once))).toBe(once);
  });
});

describe("schema and structure validation", () => {
  it("rejects unknown schema versions by name", () => {
    const bumped = MINI.replace("pesmin-run 1", "pesmin-run 2");
    expect(() => parse(bumped)).toThrow(RunfileError);
    expect(() => parse(bumped)).toThrow(/unknown schema version 2/);
    expect(() => parse(bumped)).toThrow(/supported: 1/);
  });

  it("rejects non-run-file text and empty input", () => {
    expect(() => parse("something else\n")).toThrow(/not a run-file/);
    expect(() => parse("")).toThrow(/empty run-file/);
  });

  it("rejects a missing [end] marker", () => {
    expect(() => parse(MINI.replace("[end]\n", ""))).toThrow(/missing \[end\] marker/);
  });

  it("rejects unknown sections", () => {
    const weird = MINI.replace("[events]", "[wishes]");
    expect(() => parse(weird)).toThrow(/unknown section \[wishes\]/);
  });

  it("rejects records without an id", () => {
    const anon = MINI.replace("id: t/quad/2d/fire/0,0\n", "");
    expect(() => parse(anon)).toThrow(/missing id/);
  });

  it("rejects malformed rows with the offending text", () => {
    expect(() => parse(MINI.replace("2,0.5", "2,half"))).toThrow(/bad number "half"/);
    expect(() => parse(MINI.replace("2,0.5", "nonsense"))).toThrow(/bad norm_history row/);
  });
});

describe("typed views", () => {
  const fire = load(path.join(FIXTURES, "custom-himmelblau-2d-fire-0,0.run"));

  it("exposes [run] metadata in order", () => {
    expect(runMeta(fire, "function")).toBe("himmelblau");
    expect(runMeta(fire, "optimizer")).toBe("fire");
    expect(runDim(fire)).toBe(2);
    expect([...fire.meta.keys()].slice(0, 3)).toEqual(["id", "suite", "function"]);
    expect(() => runMeta(fire, "flavor")).toThrow(/no flavor entry/);
  });

  it("aligns norm history, trajectory, and the recorded final point", () => {
    const n = Number(runMeta(fire, "n_force_evals"));
    expect(fire.normHistory.length).toBe(n);
    fire.normHistory.forEach((row, i) => expect(row.evals).toBe(i + 1));
    expect(fire.trajectory.length).toBe(n);
    // both columns came from the same floats, so parsing reproduces them exactly
    expect(fire.trajectory[n - 1].coords).toEqual(parsePoint(runMeta(fire, "final")));
    const fnorm = fire.normHistory[n - 1].fnorm;
    expect(fnorm).toBe(Number(runMeta(fire, "final_force_norm")));
  });

  it("parses event payloads as JSON even when they contain commas", () => {
    const record = load(path.join(FIXTURES, "custom-himmelblau-2d-aare-pr-0,0.run"));
    expect(record.events.length).toBeGreaterThan(0);
    for (const event of record.events) {
      expect(Number.isInteger(event.step)).toBe(true);
      expect(() => JSON.parse(event.info)).not.toThrow();
    }
    const backtrack = record.events.filter((e) => e.kind === "overshoot-backtrack");
    expect(backtrack.length).toBeGreaterThan(0);
    const info = JSON.parse(backtrack[0].info);
    expect(info).toHaveProperty("dt");
    expect(info).toHaveProperty("origin");
  });

  it("groups band snapshots consistently with the eval accounting", () => {
    const band = load(path.join(FIXTURES, "custom-leps1-12img-aare-fr-band.run"));
    const images = Number(runMeta(band, "images"));
    expect(images).toBe(12);
    const assemblies = new Set(band.band.map((row) => row.assembly));
    expect(assemblies.size).toBe(band.normHistory.length);
    expect(band.band.length).toBe(assemblies.size * images);
    // total count: two endpoint evaluations plus interior images per assembly
    expect(Number(runMeta(band, "n_force_evals"))).toBe(2 + assemblies.size * (images - 2));
    const first = band.band.filter((row) => row.assembly === 1);
    const last = band.band.filter((row) => row.assembly === assemblies.size);
    expect(first[0].coords).toEqual(last[0].coords);
    expect(first[images - 1].coords).toEqual(last[images - 1].coords);
  });
});

describe("parsePoint", () => {
  it("splits comma-joined floats", () => {
    expect(parsePoint("0.742,3.5")).toEqual([0.742, 3.5]);
    expect(parsePoint("1e-7")).toEqual([1e-7]);
  });

  it("rejects junk coordinates", () => {
    expect(() => parsePoint("1,,2")).toThrow(RunfileError);
    expect(() => parsePoint("east")).toThrow(/bad coordinate/);
  });
});
