"""Serve a named surface over the EVAL/OK line protocol on stdin/stdout.

    python -m pesmin.potentials.serve <surface> [--dim D]

Counterpart to ExternalPotential; used to exercise the external-calculator
path against the in-process one.
"""

import argparse
import sys

import numpy as np

from .registry import resolve_surface


def serve(potential, infile, outfile):
    for line in infile:
        fields = line.split()
        if not fields:
            continue
        try:
            if fields[0] != "EVAL":
                raise ValueError(f"unknown command {fields[0]!r}")
            d = int(fields[1])
            if len(fields) != 2 + d:
                raise ValueError(f"expected {d} coordinates, got {len(fields) - 2}")
            r = np.array([float(v) for v in fields[2:]])
            energy, force = potential.evaluate(r)
            reply = "OK {} {}".format(
                repr(float(energy)), " ".join(repr(float(v)) for v in force))
        except Exception as exc:  # anything wrong becomes an ERR reply
            reply = "ERR {}".format(str(exc).replace("\n", " "))
        print(reply, file=outfile, flush=True)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("surface")
    parser.add_argument("--dim", type=int, default=2)
    args = parser.parse_args(argv)
    potential = resolve_surface(args.surface, args.dim)
    serve(potential, sys.stdin, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
