/**
 * `pesmin-plot <kind> --in run[,run...] --out file.svg`
 *
 * Kinds: trajectory (paths over contours), norm-curves (log |F| vs force
 * evaluations), band-evolution (band snapshots over contours, one run).
 * Exit codes: 0 written, 1 usage or input error.
 */

import * as fs from "fs";
import * as path from "path";

import { load, RunfileError, RunRecord } from "./runfile.js";
import { PlotInputError, plotBandEvolution, plotNormCurves, plotTrajectory } from "./plots.js";

const USAGE =
  "usage: pesmin-plot <trajectory|norm-curves|band-evolution> --in FILE [FILE...] --out FILE.svg";

export function render(kind: string, records: RunRecord[]): string {
  if (kind === "trajectory") {
    return plotTrajectory(records);
  }
  if (kind === "norm-curves") {
    return plotNormCurves(records);
  }
  if (kind === "band-evolution") {
    if (records.length !== 1) {
      throw new PlotInputError(`band-evolution takes exactly one run-file, got ${records.length}`);
    }
    return plotBandEvolution(records[0]);
  }
  throw new PlotInputError(`unknown plot kind ${kind} (trajectory, norm-curves, band-evolution)`);
}

export function runCli(argv: string[], log: (line: string) => void = console.log,
                       err: (line: string) => void = console.error): number {
  const inputs: string[] = [];
  let out: string | undefined;
  let kind: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--in") {
      // run filenames may contain commas, so --in takes plain space-separated
      // values (and may repeat) rather than a comma-joined list
      const first = inputs.length;
      while (i + 1 < argv.length && !argv[i + 1].startsWith("--")) {
        inputs.push(argv[++i]);
      }
      if (inputs.length === first) {
        err(`pesmin-plot: --in needs at least one file`);
        err(USAGE);
        return 1;
      }
    } else if (arg === "--out") {
      const value = argv[++i];
      if (value === undefined) {
        err(`pesmin-plot: --out needs a value`);
        err(USAGE);
        return 1;
      }
      out = value;
    } else if (arg === "-h" || arg === "--help") {
      log(USAGE);
      return 0;
    } else if (kind === undefined && !arg.startsWith("-")) {
      kind = arg;
    } else {
      err(`pesmin-plot: unexpected argument ${arg}`);
      err(USAGE);
      return 1;
    }
  }
  if (kind === undefined || inputs.length === 0 || out === undefined) {
    err(USAGE);
    return 1;
  }
  try {
    const records = inputs.map(load);
    const svg = render(kind, records);
    fs.mkdirSync(path.dirname(path.resolve(out)), { recursive: true });
    fs.writeFileSync(out, svg);
    log(`wrote ${out}`);
    return 0;
  } catch (e) {
    if (e instanceof PlotInputError || e instanceof RunfileError) {
      err(`pesmin-plot: ${e.message}`);
      return 1;
    }
    if (e instanceof Error && "code" in e && e.code === "ENOENT") {
      err(`pesmin-plot: ${e.message}`);
      return 1;
    }
    throw e;
  }
}
