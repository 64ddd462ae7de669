"""Drive a potential served by another process over a line protocol.

Wire format, one request in flight at a time:

    -> EVAL <d> <x1> ... <xd>\n
    <- OK <energy> <f1> ... <fd>\n
    <- ERR <message>\n

Numbers are decimal text (repr round-trip precision). The child is spawned
once and reused for every evaluation; close() (or the context manager) shuts
it down.
"""

import subprocess
import threading

import numpy as np

from .base import EvaluationError, Potential


class ProtocolError(RuntimeError):
    """Transport or framing failure talking to the external calculator."""


class ExternalPotential(Potential):
    def __init__(self, argv, dim, cwd=None, env=None):
        self.dim = dim
        self.argv = list(argv)
        self._lock = threading.Lock()
        self._proc = subprocess.Popen(
            self.argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
            cwd=cwd, env=env, text=True, bufsize=1)

    def _roundtrip(self, line: str) -> str:
        if self._proc.poll() is not None:
            raise ProtocolError(
                f"external calculator exited with code {self._proc.returncode}")
        try:
            self._proc.stdin.write(line)
            self._proc.stdin.flush()
            reply = self._proc.stdout.readline()
        except (BrokenPipeError, OSError) as exc:
            raise ProtocolError(f"external calculator pipe failed: {exc}") from exc
        if reply == "":
            raise ProtocolError("external calculator closed its output stream")
        return reply.rstrip("\n")

    def _compute(self, r):
        request = "EVAL {} {}\n".format(r.size, " ".join(repr(float(v)) for v in r))
        with self._lock:
            reply = self._roundtrip(request)
        fields = reply.split()
        if not fields:
            raise ProtocolError("empty reply line")
        if fields[0] == "ERR":
            raise EvaluationError("external calculator: " + " ".join(fields[1:]), r)
        if fields[0] != "OK":
            raise ProtocolError(f"unexpected reply {reply!r}")
        if len(fields) != 2 + r.size:
            raise ProtocolError(
                f"reply carries {len(fields) - 2} values, expected {1 + r.size}: {reply!r}")
        try:
            values = [float(v) for v in fields[1:]]
        except ValueError as exc:
            raise ProtocolError(f"unparseable numbers in reply {reply!r}") from exc
        return values[0], np.array(values[1:])

    def close(self):
        proc = self._proc
        if proc.poll() is None:
            try:
                proc.stdin.close()
            except OSError:
                pass
            try:
                proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                proc.kill()
                proc.wait()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False
