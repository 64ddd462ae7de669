/**
 * Reader/writer for bench run-files (schema 1).
 *
 * Layout: a magic line `pesmin-run 1`, a two-line mutable header
 * (`created:`, `command:`), a `[run]` section of `key: value` pairs, then
 * comma-separated data sections (`[norm_history]`, `[trajectory]`,
 * `[events]`, `[band]`, each starting with a column-name row) closed by
 * `[end]`. Optional sections (trajectory, band) are omitted when empty.
 *
 * Numbers in the data rows were formatted by the producer's float repr,
 * which does not always match what Number#toString would emit (`1e-07` vs
 * `1e-7`, different scientific-notation switchover). Re-serializing parsed
 * doubles would therefore change bytes, so the parser keeps every data row
 * verbatim and dumps() re-emits the stored text: write -> parse -> write is
 * byte-stable, and files written by the producer round-trip unchanged.
 */

import * as fs from "fs";

export class RunfileError extends Error {}

const MAGIC = "pesmin-run";
const SCHEMA_VERSION = 1;

const SECTIONS = ["norm_history", "trajectory", "events", "band"] as const;
type SectionName = (typeof SECTIONS)[number];

const DEFAULT_COLUMNS: Record<SectionName, string> = {
  norm_history: "eval,fnorm",
  trajectory: "eval,x1,x2",
  events: "step,kind,info",
  band: "assembly,image,x1,x2",
};

export interface NormPoint {
  evals: number;
  fnorm: number;
}

export interface TrajectoryPoint {
  evals: number;
  coords: number[];
}

export interface RunEvent {
  step: number;
  kind: string;
  /** payload as the raw JSON text; parse on demand */
  info: string;
}

export interface BandPoint {
  assembly: number;
  image: number;
  coords: number[];
}

interface SectionData {
  /** column-name row as read (canonical default when synthesized) */
  columns: string;
  /** data rows verbatim, parallel to the typed arrays on the record */
  rows: string[];
}

export interface RunRecord {
  created: string;
  command: string;
  /** [run] keys in file order */
  meta: Map<string, string>;
  normHistory: NormPoint[];
  trajectory: TrajectoryPoint[];
  events: RunEvent[];
  band: BandPoint[];
  sections: Record<SectionName, SectionData>;
}

function emptyRecord(): RunRecord {
  const sections = {} as Record<SectionName, SectionData>;
  for (const name of SECTIONS) {
    sections[name] = { columns: DEFAULT_COLUMNS[name], rows: [] };
  }
  return {
    created: "",
    command: "",
    meta: new Map(),
    normHistory: [],
    trajectory: [],
    events: [],
    band: [],
    sections,
  };
}

/** Parse a comma-separated coordinate string ("0.742,3.5") into floats. */
export function parsePoint(text: string): number[] {
  return text.split(",").map((field) => {
    const v = Number(field);
    if (field.trim() === "" || Number.isNaN(v)) {
      throw new RunfileError(`bad coordinate ${JSON.stringify(field)} in ${JSON.stringify(text)}`);
    }
    return v;
  });
}

function parseInt_(field: string, line: string): number {
  const v = Number(field);
  if (!Number.isInteger(v)) {
    throw new RunfileError(`bad integer ${JSON.stringify(field)} in row ${JSON.stringify(line)}`);
  }
  return v;
}

function parseFloat_(field: string, line: string): number {
  const v = Number(field);
  if (field.trim() === "" || Number.isNaN(v)) {
    throw new RunfileError(`bad number ${JSON.stringify(field)} in row ${JSON.stringify(line)}`);
  }
  return v;
}

function parseRow(record: RunRecord, section: SectionName, line: string): void {
  if (section === "events") {
    // info is JSON and may contain commas: split on the first two only
    const i1 = line.indexOf(",");
    const i2 = i1 < 0 ? -1 : line.indexOf(",", i1 + 1);
    if (i2 < 0) {
      throw new RunfileError(`bad events row ${JSON.stringify(line)}`);
    }
    record.events.push({
      step: parseInt_(line.slice(0, i1), line),
      kind: line.slice(i1 + 1, i2),
      info: line.slice(i2 + 1),
    });
    return;
  }
  const fields = line.split(",");
  if (section === "norm_history") {
    if (fields.length !== 2) {
      throw new RunfileError(`bad norm_history row ${JSON.stringify(line)}`);
    }
    record.normHistory.push({
      evals: parseInt_(fields[0], line),
      fnorm: parseFloat_(fields[1], line),
    });
  } else if (section === "trajectory") {
    if (fields.length < 2) {
      throw new RunfileError(`bad trajectory row ${JSON.stringify(line)}`);
    }
    record.trajectory.push({
      evals: parseInt_(fields[0], line),
      coords: fields.slice(1).map((f) => parseFloat_(f, line)),
    });
  } else {
    if (fields.length < 3) {
      throw new RunfileError(`bad band row ${JSON.stringify(line)}`);
    }
    record.band.push({
      assembly: parseInt_(fields[0], line),
      image: parseInt_(fields[1], line),
      coords: fields.slice(2).map((f) => parseFloat_(f, line)),
    });
  }
}

export function parse(text: string): RunRecord {
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  if (lines.length === 0) {
    throw new RunfileError("empty run-file");
  }
  const magic = lines[0].trim().split(/\s+/);
  if (magic.length !== 2 || magic[0] !== MAGIC) {
    throw new RunfileError(`not a run-file (first line ${JSON.stringify(lines[0])})`);
  }
  if (magic[1] !== String(SCHEMA_VERSION)) {
    throw new RunfileError(`unknown schema version ${magic[1]} (supported: ${SCHEMA_VERSION})`);
  }

  const record = emptyRecord();
  let section: SectionName | "run" | null = null;
  let expectColumns = false;
  let closed = false;
  for (const line of lines.slice(1)) {
    if (line.startsWith("[") && line.endsWith("]")) {
      const name = line.slice(1, -1);
      if (name === "end") {
        closed = true;
        break;
      }
      if (name !== "run" && !(SECTIONS as readonly string[]).includes(name)) {
        throw new RunfileError(`unknown section [${name}]`);
      }
      section = name as SectionName | "run";
      expectColumns = name !== "run";
      continue;
    }
    if (section === null) {
      // mutable header above [run]
      const idx = line.indexOf(": ");
      if (idx < 0) continue;
      const key = line.slice(0, idx);
      const value = line.slice(idx + 2);
      if (key === "created") record.created = value;
      else if (key === "command") record.command = value;
      continue;
    }
    if (section === "run") {
      const idx = line.indexOf(": ");
      if (idx < 0) {
        throw new RunfileError(`bad run line ${JSON.stringify(line)}`);
      }
      record.meta.set(line.slice(0, idx), line.slice(idx + 2));
      continue;
    }
    if (expectColumns) {
      record.sections[section].columns = line;
      expectColumns = false;
      continue;
    }
    record.sections[section].rows.push(line);
    parseRow(record, section, line);
  }
  if (!closed) {
    throw new RunfileError("missing [end] marker");
  }
  if (!record.meta.has("id")) {
    throw new RunfileError("missing id in [run] section");
  }
  return record;
}

export function dumps(record: RunRecord): string {
  const lines = [
    `${MAGIC} ${SCHEMA_VERSION}`,
    `created: ${record.created}`,
    `command: ${record.command}`,
    "[run]",
  ];
  for (const [key, value] of record.meta) {
    lines.push(`${key}: ${value}`);
  }
  for (const name of SECTIONS) {
    const data = record.sections[name];
    if (data.rows.length === 0 && (name === "trajectory" || name === "band")) {
      continue; // optional series are omitted entirely when absent
    }
    lines.push(`[${name}]`, data.columns, ...data.rows);
  }
  lines.push("[end]");
  return lines.join("\n") + "\n";
}

export function load(path: string): RunRecord {
  return parse(fs.readFileSync(path, "utf-8"));
}

/** Required [run] value; throws when the key is absent. */
export function runMeta(record: RunRecord, key: string): string {
  const value = record.meta.get(key);
  if (value === undefined) {
    throw new RunfileError(`run ${record.meta.get("id") ?? "?"} has no ${key} entry`);
  }
  return value;
}

/** Coordinates per degree of freedom, from the [run] dim entry. */
export function runDim(record: RunRecord): number {
  const v = Number(runMeta(record, "dim"));
  if (!Number.isInteger(v) || v < 1) {
    throw new RunfileError(`bad dim ${JSON.stringify(record.meta.get("dim"))}`);
  }
  return v;
}
