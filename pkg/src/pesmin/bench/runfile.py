"""Line-oriented run-file format shared with the plotting component.

Layout (schema version 1)::

    pesmin-run 1
    created: 2024-05-01T12:00:00Z
    command: min --function himmelblau --optimizer fire
    [run]
    id: custom/himmelblau/2d/fire/0,0
    suite: custom
    ...
    [norm_history]
    eval,fnorm
    1,4.844813951249545
    [trajectory]
    eval,x1,x2
    [events]
    step,kind,info
    [band]
    assembly,image,x1,x2
    [end]

Everything above ``[run]`` is the mutable header (timestamps live only
there); the body from ``[run]`` to ``[end]`` is deterministic for identical
inputs, so re-running a command reproduces it byte for byte. Floats are
written with repr for exact round-trips, and section order is fixed, which
makes write -> parse -> write idempotent.
"""

import json
import os
import tempfile
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

SCHEMA_VERSION = 1
MAGIC = "pesmin-run"

# body sections, in the order they are written
_SECTIONS = ("norm_history", "trajectory", "events", "band")


class RunfileError(ValueError):
    """Malformed run-file text (bad magic, unknown schema, bad section rows)."""


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return str(obj)


@dataclass
class RunRecord:
    """One optimization run, ready to serialize.

    meta holds the scalar key/value lines of the [run] section (id, suite,
    function, optimizer, counts, convergence flags, ...). Series data lives in
    the list fields; trajectory and band rows are optional.
    """
    meta: Dict[str, str]
    norm_history: List[tuple] = field(default_factory=list)
    trajectory: List[tuple] = field(default_factory=list)
    events: List[tuple] = field(default_factory=list)
    band: List[tuple] = field(default_factory=list)
    created: str = ""
    command: str = ""

    @property
    def id(self) -> str:
        return self.meta["id"]


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def format_point(coords) -> str:
    return ",".join(repr(float(c)) for c in np.asarray(coords, dtype=float))


def parse_point(text: str) -> np.ndarray:
    return np.array([float(v) for v in text.split(",")], dtype=float)


def make_record(*, run_id, suite, function, dim, optimizer, start, params,
                report, created="", command="") -> RunRecord:
    """Assemble a RunRecord from a RunReport and its run identity."""
    if not created:
        from datetime import datetime, timezone
        created = datetime.now(timezone.utc).isoformat(timespec="seconds")
    meta = {
        "id": run_id,
        "suite": suite,
        "function": function,
        "dim": str(int(dim)),
        "optimizer": optimizer,
        "start": format_point(start),
        "params": json.dumps(params, sort_keys=True),
        "n_force_evals": str(report.n_force_evals),
        "converged": "true" if report.converged else "false",
        "stop_reason": report.stop_reason,
        "final": format_point(report.final_coords),
        "final_energy": repr(float(report.final_energy)),
        "final_force_norm": repr(float(report.final_force_norm)),
    }
    record = RunRecord(meta=meta, created=created, command=command)
    record.norm_history = [(int(n), float(f)) for n, f in report.norm_history]
    if report.trajectory is not None:
        record.trajectory = [
            (int(n), *map(float, r))
            for (n, _), r in zip(report.norm_history, report.trajectory)]
    record.events = [(e.step, e.kind,
                      json.dumps(e.info, sort_keys=True, default=_json_default))
                     for e in report.events]
    return record


def _section_header(name: str, record: RunRecord) -> str:
    if name == "norm_history":
        return "eval,fnorm"
    if name == "trajectory":
        d = len(record.trajectory[0]) - 1 if record.trajectory else int(record.meta["dim"])
        return "eval," + ",".join(f"x{i + 1}" for i in range(d))
    if name == "events":
        return "step,kind,info"
    # band rows: assembly index, image index, coordinates
    d = len(record.band[0]) - 2 if record.band else int(record.meta["dim"])
    return "assembly,image," + ",".join(f"x{i + 1}" for i in range(d))


def dumps(record: RunRecord) -> str:
    lines = [f"{MAGIC} {SCHEMA_VERSION}",
             f"created: {record.created}",
             f"command: {record.command}",
             "[run]"]
    lines += [f"{key}: {value}" for key, value in record.meta.items()]
    for name in _SECTIONS:
        rows = getattr(record, name)
        if not rows and name in ("trajectory", "band"):
            continue  # optional series are omitted entirely when absent
        lines.append(f"[{name}]")
        lines.append(_section_header(name, record))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
    lines.append("[end]")
    return "\n".join(lines) + "\n"


def parse(text: str) -> RunRecord:
    lines = text.splitlines()
    if not lines:
        raise RunfileError("empty run-file")
    magic = lines[0].split()
    if len(magic) != 2 or magic[0] != MAGIC:
        raise RunfileError(f"not a run-file (first line {lines[0]!r})")
    if magic[1] != str(SCHEMA_VERSION):
        raise RunfileError(f"unknown schema version {magic[1]} (supported: {SCHEMA_VERSION})")

    record = RunRecord(meta={})
    section = None
    expect_columns = False
    for line in lines[1:]:
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1]
            if section == "end":
                break
            if section != "run":
                if section not in _SECTIONS:
                    raise RunfileError(f"unknown section [{section}]")
                expect_columns = True
            continue
        if section is None:  # header
            key, _, value = line.partition(": ")
            if key == "created":
                record.created = value
            elif key == "command":
                record.command = value
            continue
        if section == "run":
            key, sep, value = line.partition(": ")
            if not sep:
                raise RunfileError(f"bad run line {line!r}")
            record.meta[key] = value
            continue
        if expect_columns:  # column-name row of a series section
            expect_columns = False
            continue
        fields = line.split(",", 2 if section == "events" else -1)
        if section == "norm_history":
            record.norm_history.append((int(fields[0]), float(fields[1])))
        elif section == "trajectory":
            record.trajectory.append((int(fields[0]), *map(float, fields[1:])))
        elif section == "events":
            record.events.append((int(fields[0]), fields[1], fields[2]))
        elif section == "band":
            record.band.append((int(fields[0]), int(fields[1]), *map(float, fields[2:])))
    else:
        raise RunfileError("missing [end] marker")
    if "id" not in record.meta:
        raise RunfileError("missing id in [run] section")
    return record


def load(path) -> RunRecord:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def record_filename(run_id: str) -> str:
    return run_id.replace("/", "-").replace(" ", "") + ".run"


def write_record(record: RunRecord, directory) -> str:
    """Atomically write the record into directory; returns the path."""
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, record_filename(record.id))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dumps(record))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path
