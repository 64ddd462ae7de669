"""External-calculator adapter: wire protocol, fidelity, failure modes."""

import sys

import numpy as np
import pytest

from pesmin.potentials import (EvaluationError, ExternalPotential, ProtocolError,
                               catalog_lookup, leps1)
from pesmin.potentials.serve import serve

from conftest import halton_points

SERVE = [sys.executable, "-m", "pesmin.potentials.serve"]


def _spawn(surface, dim=2):
    return ExternalPotential(SERVE + [surface, "--dim", str(dim)], dim=dim)


def test_served_surface_is_bit_identical_to_in_process():
    local = catalog_lookup("himmelblau")
    with _spawn("himmelblau") as remote:
        for r in halton_points(25, 2, -4.0, 4.0):
            le, lf = local.evaluate(r)
            re_, rf = remote.evaluate(r)
            # repr round-trips doubles exactly, so the wire is lossless
            assert le == re_
            assert np.array_equal(lf, rf)


def test_served_leps_surface_matches():
    local = leps1()
    with _spawn("leps1") as remote:
        for r in halton_points(25, 2, 0.6, 3.0):
            le, lf = local.evaluate(r)
            re_, rf = remote.evaluate(r)
            assert le == re_
            assert np.array_equal(lf, rf)


def test_served_4d_surface_matches():
    local = catalog_lookup("himmelblau", 4)
    with _spawn("himmelblau", dim=4) as remote:
        for r in halton_points(10, 4, -3.0, 3.0):
            assert local.evaluate(r).energy == remote.evaluate(r).energy


def test_err_reply_becomes_evaluation_error():
    # out-of-domain points make the server reply ERR, which the adapter
    # surfaces as an evaluation failure, not a protocol failure
    with _spawn("leps1") as remote:
        with pytest.raises(EvaluationError, match="external calculator"):
            remote.evaluate(np.array([-1.0, 1.0]))
        # the child must survive the ERR exchange and keep serving
        assert remote.evaluate(np.array([1.0, 1.0])).energy == pytest.approx(
            leps1().energy(np.array([1.0, 1.0])))


def test_garbage_reply_is_a_protocol_error():
    # `cat` echoes the request back: framed wrong, flagged as such
    with ExternalPotential(["cat"], dim=2) as remote:
        with pytest.raises(ProtocolError, match="unexpected reply"):
            remote.evaluate(np.zeros(2))


def test_wrong_arity_reply_is_a_protocol_error():
    script = ("import sys\n"
              "for line in sys.stdin:\n"
              "    print('OK 1.0 2.0', flush=True)\n")
    with ExternalPotential([sys.executable, "-c", script], dim=2) as remote:
        with pytest.raises(ProtocolError, match="expected"):
            remote.evaluate(np.zeros(2))


def test_unparseable_numbers_are_a_protocol_error():
    script = ("import sys\n"
              "for line in sys.stdin:\n"
              "    print('OK one two three', flush=True)\n")
    with ExternalPotential([sys.executable, "-c", script], dim=2) as remote:
        with pytest.raises(ProtocolError, match="unparseable"):
            remote.evaluate(np.zeros(2))


def test_dead_child_is_a_protocol_error():
    with ExternalPotential([sys.executable, "-c", "pass"], dim=2) as remote:
        with pytest.raises(ProtocolError):
            remote.evaluate(np.zeros(2))
        # and stays failed on retry instead of hanging
        with pytest.raises(ProtocolError):
            remote.evaluate(np.zeros(2))


def test_close_is_idempotent():
    remote = _spawn("booth")
    remote.evaluate(np.zeros(2))
    remote.close()
    remote.close()
    with pytest.raises(ProtocolError, match="exited"):
        remote.evaluate(np.zeros(2))


def test_serve_loop_round_trip_in_memory(tmp_path):
    # run the serve loop directly on file objects: request framing, ERR on
    # malformed input, blank-line tolerance
    booth = catalog_lookup("booth")
    requests = tmp_path / "req.txt"
    replies = tmp_path / "rep.txt"
    requests.write_text(
        "EVAL 2 1.0 3.0\n"
        "\n"
        "EVAL 2 0.25 -0.5\n"
        "PING\n"
        "EVAL 2 1.0\n")
    with open(requests) as fin, open(replies, "w") as fout:
        serve(booth, fin, fout)
    lines = replies.read_text().splitlines()
    assert len(lines) == 4  # the blank line is skipped, not answered
    e0 = float(lines[0].split()[1])
    assert e0 == pytest.approx(0.0, abs=1e-12)
    assert lines[1].startswith("OK ")
    assert lines[2].startswith("ERR ")
    assert lines[3].startswith("ERR ")
