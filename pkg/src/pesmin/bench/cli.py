"""Benchmark CLI: single runs, published-table reproduction, band runs, alpha sweeps.

    pesmin-bench min --function himmelblau --optimizer fire
    pesmin-bench table --suite table2 --check
    pesmin-bench neb --pes leps1 --images 12 --k 1 --optimizer aare-fr
    pesmin-bench sweep-alpha --function himmelblau --alphas 0.1,0.5,1.0

Exit codes: 0 success, 1 usage error, 2 run failure (an optimization did not
converge), 3 acceptance deviation (a converged count landed outside the
published tolerance band; only with --check). Run failure wins over deviation
when both occur. The run-file format is documented in runfile.py.
"""

import argparse
import sys

import numpy as np

from ..optimizers import OPTIMIZER_NAMES
from ..potentials import UnknownFunctionError
from . import runfile, suites

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUN_FAILURE = 2
EXIT_DEVIATION = 3


class _Parser(argparse.ArgumentParser):
    """argparse with the documented usage exit code (1, not argparse's 2)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _parse_point(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",")], dtype=float)
    except ValueError:
        raise SystemExit(_usage(f"could not parse point {text!r} (want e.g. 0,0)"))


def _usage(message: str) -> int:
    sys.stderr.write(f"pesmin-bench: error: {message}\n")
    return EXIT_USAGE


def _write(record, out_dir, written):
    if out_dir:
        written.append(runfile.write_record(record, out_dir))


def _deviation_note(count: int, printed, converged: bool) -> str:
    if printed is None:
        return "no published value"
    if not converged:
        return f"published {printed}"
    dev = 100.0 * (count - printed) / printed
    tol = 100.0 * suites.load_reference()["tolerance"]
    flag = "" if abs(dev) <= tol else f"  [outside +-{tol:.0f}%]"
    return f"published {printed} ({dev:+.1f}%){flag}"


def cmd_min(args, command: str) -> int:
    start = _parse_point(args.start) if args.start else None
    try:
        record = suites.run_min(args.function, args.optimizer, dim=args.dim,
                                start=start, f_tol=args.ftol,
                                max_evals=args.max_evals, traj=args.traj,
                                command=command)
    except (UnknownFunctionError, ValueError) as exc:
        return _usage(str(exc))
    written = []
    _write(record, args.out, written)

    meta = record.meta
    converged = meta["converged"] == "true"
    printed = suites.printed_count(args.function, args.dim, args.optimizer)
    if printed is not None and start is not None:
        from ..potentials import resolve_surface
        default = getattr(resolve_surface(args.function, args.dim), "start", None)
        if default is None or not np.array_equal(start, default):
            printed = None  # published cells are tied to the catalog start
    print(f"{args.function} {args.dim}D {args.optimizer}: "
          f"{meta['n_force_evals']} force evaluations, "
          f"{meta['stop_reason']} (|F| = {float(meta['final_force_norm']):.3e})")
    print(f"  final point: ({meta['final'].replace(',', ', ')})")
    print(f"  {_deviation_note(int(meta['n_force_evals']), printed, converged)}")
    for path in written:
        print(f"  wrote {path}")
    if not converged:
        return EXIT_RUN_FAILURE
    if args.check and printed is not None:
        tol = suites.load_reference()["tolerance"]
        if abs(int(meta["n_force_evals"]) - printed) > tol * printed:
            return EXIT_DEVIATION
    return EXIT_OK


def _format_table(cells, columns) -> str:
    by_function = {}
    for cell in cells:
        by_function.setdefault(cell.function, {})[cell.optimizer] = cell
    header = ["function"]
    for name in columns:
        header.append(name)
        if name != "fire":
            header.append(f"fire/{name}")
    header.append("vs published")
    rows = [header]
    for function, per_opt in by_function.items():
        fire = per_opt.get("fire")
        row = [function]
        notes = []
        for name in columns:
            cell = per_opt[name]
            row.append(str(cell.count) if cell.converged else cell.stop_reason)
            if name != "fire":
                if cell.converged and fire is not None and fire.converged:
                    row.append(f"{fire.count / cell.count:.2f}")
                else:
                    row.append("-")
            if not cell.in_band:
                dev = f"{100 * cell.deviation:+.0f}%" if cell.converged else cell.stop_reason
                notes.append(f"{name} {dev}")
        row.append("; ".join(notes) if notes else "all in band")
        rows.append(row)
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines)


def cmd_table(args, command: str) -> int:
    rows = args.pes.split(",") if args.pes else None
    try:
        cells = suites.run_table(args.suite, f_tol=args.ftol,
                                 max_evals=args.max_evals, rows=rows,
                                 traj=args.traj, command=command)
    except ValueError as exc:
        return _usage(str(exc))
    written = []
    for cell in cells:
        _write(cell.record, args.out, written)

    columns = suites.load_reference()[args.suite]["columns"]
    print(_format_table(cells, columns))
    n_in = sum(cell.in_band for cell in cells)
    print(f"\n{n_in}/{len(cells)} cells within +-"
          f"{100 * suites.load_reference()['tolerance']:.0f}% of the published counts")
    if written:
        print(f"wrote {len(written)} run-files to {args.out}")
    if any(not cell.converged for cell in cells):
        return EXIT_RUN_FAILURE
    if args.check and any(not cell.in_band for cell in cells):
        return EXIT_DEVIATION
    return EXIT_OK


def cmd_neb(args, command: str) -> int:
    endpoints = None
    if args.endpoints:
        import json
        with open(args.endpoints, "r", encoding="utf-8") as fh:
            spec = json.load(fh)
        if isinstance(spec, dict):
            spec = [spec["start"], spec["end"]]
        endpoints = [np.asarray(e, dtype=float) for e in spec]
    try:
        record = suites.run_neb(args.pes, args.optimizer, images=args.images,
                                k_spring=args.k, endpoints=endpoints,
                                dim=args.dim, f_tol=args.ftol,
                                max_evals=args.max_evals, traj=args.traj,
                                command=command)
    except ValueError as exc:
        return _usage(str(exc))
    except RuntimeError as exc:  # endpoint location failure, protocol trouble
        sys.stderr.write(f"pesmin-bench: {exc}\n")
        return EXIT_RUN_FAILURE
    written = []
    _write(record, args.out, written)

    meta = record.meta
    converged = meta["converged"] == "true"
    printed = suites.printed_count(args.pes, args.dim, args.optimizer)
    print(f"{args.pes} band ({args.images} images, k = {args.k:g}) "
          f"{args.optimizer}: {meta['n_force_evals']} force evaluations, "
          f"{meta['stop_reason']}")
    print(f"  stacked |F| = {float(meta['final_force_norm']):.3e}")
    if args.images == 12 and args.k == 1.0:
        print(f"  {_deviation_note(int(meta['n_force_evals']), printed, converged)}")
    for path in written:
        print(f"  wrote {path}")
    if not converged:
        return EXIT_RUN_FAILURE
    if args.check and printed is not None and args.images == 12 and args.k == 1.0:
        tol = suites.load_reference()["tolerance"]
        if abs(int(meta["n_force_evals"]) - printed) > tol * printed:
            return EXIT_DEVIATION
    return EXIT_OK


def cmd_sweep_alpha(args, command: str) -> int:
    try:
        alphas = [float(v) for v in args.alphas.split(",")] if args.alphas else []
    except ValueError:
        return _usage(f"could not parse alpha list {args.alphas!r}")
    start = _parse_point(args.start) if args.start else None
    try:
        records = suites.run_sweep_alpha(args.function, alphas, dim=args.dim,
                                         start=start, f_tol=args.ftol,
                                         max_evals=args.max_evals,
                                         traj=args.traj, command=command)
    except (UnknownFunctionError, ValueError) as exc:
        return _usage(str(exc))
    written = []
    for record in records:
        _write(record, args.out, written)

    counts = []
    print(f"{args.function} {args.dim}D FIRE alpha_start sweep:")
    for alpha, record in zip(alphas, records):
        n = int(record.meta["n_force_evals"])
        ok = record.meta["converged"] == "true"
        counts.append((n if ok else None, alpha))
        print(f"  alpha = {alpha:<6g} {n if ok else record.meta['stop_reason']}")
    finished = [(n, a) for n, a in counts if n is not None]
    if finished:
        best_n, best_a = min(finished)
        print(f"  optimum: alpha = {best_a:g} ({best_n} evaluations)")
    if written:
        print(f"  wrote {len(written)} run-files to {args.out}")
    return EXIT_OK if len(finished) == len(alphas) else EXIT_RUN_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pesmin-bench",
                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--ftol", type=float, default=0.01,
                       help="force-norm convergence tolerance (default 0.01)")
        p.add_argument("--max-evals", type=int, default=100000,
                       help="force-evaluation budget (default 100000)")
        p.add_argument("--out", help="directory for run-files")
        p.add_argument("--traj", action="store_true",
                       help="record the trajectory (and band snapshots for neb)")
        p.add_argument("--check", action="store_true",
                       help="exit 3 when a count misses the published band")

    p = sub.add_parser("min", help="relax a single start point")
    p.add_argument("--function", required=True)
    p.add_argument("--optimizer", default="fire", choices=OPTIMIZER_NAMES)
    p.add_argument("--start", help="comma-separated coordinates (default: catalog start)")
    p.add_argument("--dim", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_min)

    p = sub.add_parser("table", help="reproduce a published table suite")
    p.add_argument("--suite", required=True,
                   choices=("table1", "table2", "table3", "table4"))
    p.add_argument("--pes", help="comma-separated row subset (e.g. leps1,leps2)")
    common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("neb", help="relax an elastic band on a LEPS or external surface")
    p.add_argument("--pes", required=True,
                   help="leps1 | leps2 | external:<command line>")
    p.add_argument("--images", type=int, default=12)
    p.add_argument("--k", type=float, default=1.0, help="spring constant")
    p.add_argument("--optimizer", default="fire", choices=OPTIMIZER_NAMES)
    p.add_argument("--endpoints",
                   help='JSON file with fixed endpoints: [[...], [...]] or {"start": ..., "end": ...}')
    p.add_argument("--dim", type=int, default=2,
                   help="coordinates per image (external surfaces)")
    common(p)
    p.set_defaults(func=cmd_neb)

    p = sub.add_parser("sweep-alpha", help="FIRE evaluation counts across alpha_start")
    p.add_argument("--function", required=True)
    p.add_argument("--alphas", required=True,
                   help="comma-separated values in [0, 1]")
    p.add_argument("--start")
    p.add_argument("--dim", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_sweep_alpha)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    command = " ".join(argv)
    try:
        return args.func(args, command)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
