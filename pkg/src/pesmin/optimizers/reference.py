"""Classical line-search minimizers used as a slow-but-sure reference.

Steepest descent or Polak-Ribiere conjugate gradient, with each line
minimization done by golden-section search to a fixed interval tolerance.
Expensive in evaluations by construction; used to locate well bottoms (e.g.
band endpoints) and as a behavioral yardstick, not as a contender.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..potentials.base import EvaluationError
from .common import (BudgetExhausted, DegenerateDirectionError, RunContext,
                     RunReport, ZeroDenominatorError, beta_pr)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f, a: float, b: float, tol: float = 1e-6) -> float:
    """Golden-section minimum of f on [a, b] to interval width tol; returns midpoint."""
    if not tol > 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    yc, yd = f(c), f(d)
    while (b - a) > tol:
        if yc < yd:
            b, d, yd = d, c, yc
            c = b - _INV_PHI * (b - a)
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            d = a + _INV_PHI * (b - a)
            yd = f(d)
    return (a + b) / 2.0


@dataclass
class ReferenceParams:
    f_tol: float = 0.01
    max_evals: int = 100000
    line_tol: float = 1e-6
    initial_step: float = 1.0


def run_reference(potential, r0, method: str = "cg",
                  params: ReferenceParams = ReferenceParams(), *,
                  record_trajectory: bool = False) -> RunReport:
    """Relax r0 by classical SD ('sd') or PR conjugate gradient ('cg')."""
    if method not in ("sd", "cg"):
        raise ValueError(f"method must be 'sd' or 'cg', got {method!r}")
    p = params
    run = RunContext(potential, p.f_tol, p.max_evals, record_trajectory)
    r = np.array(r0, dtype=float)
    d_prev = None
    f_prev = None
    alpha_prev = None

    try:
        energy, force, fnorm = run.evaluate(r)
        while True:
            run.step += 1
            if fnorm < p.f_tol:
                return run.report(True, "converged", r, energy, fnorm)
            if fnorm == 0.0:
                return run.report(True, "stationary", r, energy, fnorm)

            if method == "sd" or d_prev is None:
                d = force
            else:
                try:
                    beta = beta_pr(force, f_prev)
                except ZeroDenominatorError:
                    beta = 0.0
                d = force + beta * d_prev
                if not np.any(d) or float(np.dot(force, d)) <= 0.0:
                    d = force  # restart on loss of descent
            d_hat = d / np.linalg.norm(d)

            def phi(alpha):
                # out-of-domain or overflowing probes act as an infinite wall
                # so the bracket pulls back instead of aborting the search
                try:
                    return run.evaluate(r + alpha * d_hat)[0]
                except EvaluationError:
                    return float("inf")

            # bracket the line minimum by doubling from the last accepted step;
            # phi decreases initially (d is descent), so the first rise at probe
            # p_k brackets the minimum inside [p_{k-2}, p_k] (p_0 = 0)
            prev2_alpha = prev_alpha = 0.0
            y_prev = energy
            t = alpha_prev if alpha_prev else p.initial_step
            while True:
                y_t = phi(t)
                if y_t >= y_prev or t > 1e12:
                    lo, hi = prev2_alpha, t
                    break
                prev2_alpha, prev_alpha = prev_alpha, t
                y_prev = y_t
                t *= 2.0
            alpha = golden_section(phi, lo, hi, p.line_tol)

            r = r + alpha * d_hat
            f_prev, d_prev = force, d
            alpha_prev = alpha if alpha > 0.0 else None
            energy, force, fnorm = run.evaluate(r)
    except BudgetExhausted:
        return run.report(False, "budget-exceeded", r, energy, fnorm)
    except EvaluationError:
        return run.report(False, "diverged", r, energy, fnorm)
    except DegenerateDirectionError:
        return run.report(True, "stationary", r, energy, fnorm)


def find_minimum(potential, r0, f_tol: float = 1e-8, max_evals: int = 200000):
    """Locate the basin bottom from r0; returns (coords, energy).

    Raises RuntimeError if the tolerance is not reached within the budget.
    """
    report = run_reference(potential, r0, "cg",
                           ReferenceParams(f_tol=f_tol, max_evals=max_evals))
    if not report.converged:
        raise RuntimeError(
            f"reference minimization did not reach |F| < {f_tol} "
            f"(stopped: {report.stop_reason}, |F| = {report.final_force_norm:.3g})")
    return report.final_coords, report.final_energy
