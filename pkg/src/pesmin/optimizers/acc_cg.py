"""Conjugate-gradient relaxation with angle-windowed step acceptance.

Directions follow Polak-Ribiere on the forces at successive accepted points.
The trial step along each direction starts from a 1-D Newton estimate built
out of the previous accepted displacement, then adapts to the angle Theta
between the trial-point force and the direction:

    Theta < 80    far from the line minimum: double the step and retry
                  (always re-measured from the same accepted origin)
    80..100       close enough to perpendicular: accept
    Theta > 100   stepped past the line minimum: secant-refine the step

Convergence is checked on every force evaluation, so a trial or refinement
point that already satisfies f_tol ends the run immediately.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..potentials.base import EvaluationError
from .common import (BudgetExhausted, DegenerateDirectionError, RunContext,
                     RunReport, ZeroDenominatorError, _ConvergedSignal,
                     angle_theta, beta_pr)


@dataclass
class AccCgParams:
    f_tol: float = 0.01
    max_evals: int = 100000
    default_step: float = 0.1
    cap_factor: float = 2.0  # trial step <= cap_factor * last accepted step
    theta_lo: float = 80.0
    theta_hi: float = 100.0
    max_refines: int = 8


def newton_initial_step(force, d_hat, f_prev, s_prev, default_step: float = 0.1) -> float:
    """Newton estimate of the step to the line minimum along d_hat.

    The curvature along the new direction is approximated from the force
    change over the last accepted displacement s_prev:

        kappa = (f_prev - force) . d_hat / (s_prev . d_hat)
        alpha = (force . d_hat) / kappa

    Degenerate history (no previous step, zero projection, non-positive
    curvature or step) falls back to default_step.
    """
    if f_prev is None or s_prev is None:
        return default_step
    s_proj = float(np.dot(s_prev, d_hat))
    if s_proj == 0.0:
        return default_step
    kappa = float(np.dot(f_prev - force, d_hat)) / s_proj
    if kappa <= 0.0:
        return default_step
    alpha = float(np.dot(force, d_hat)) / kappa
    if alpha <= 0.0:
        return default_step
    return alpha


def secant_refine(run: RunContext, origin, d_hat, d_full, alpha_hi, f_origin, f_hi,
                  e_hi: float, theta_lo: float = 80.0, theta_hi: float = 100.0,
                  max_refines: int = 8):
    """Shrink an overshot step until Theta lands in [theta_lo, theta_hi].

    Root-finds g(alpha) = -F(origin + alpha d_hat) . d_hat by secant updates on
    the bracket [0, alpha_hi]; requires g(0) < 0 < g(alpha_hi). When the force
    magnitudes at the two ends are wildly unbalanced the secant point barely
    moves between refinements and the shrink stalls; an update that lands
    within 5% of bracket width of the previous one falls back to the midpoint.
    If the window is not hit within max_refines evaluations, logs
    refine-exhausted and returns the evaluated point with Theta closest to 90
    degrees.

    Returns (r, energy, force, fnorm, alpha).
    """
    g_lo, a_lo = -float(np.dot(f_origin, d_hat)), 0.0
    g_hi, a_hi = -float(np.dot(f_hi, d_hat)), float(alpha_hi)
    if not (g_lo < 0.0 < g_hi):
        raise ValueError(
            f"secant bracket precondition violated: g(0)={g_lo}, g(alpha_hi)={g_hi}")

    fn_hi = float(np.linalg.norm(f_hi))
    theta_start = angle_theta(f_hi, d_full) if fn_hi > 0.0 else 90.0
    best = (abs(theta_start - 90.0), theta_start,
            origin + a_hi * d_hat, e_hi, f_hi, fn_hi, a_hi)

    a_last = None
    for _ in range(max_refines):
        a_new = (a_lo * g_hi - a_hi * g_lo) / (g_hi - g_lo)
        width = a_hi - a_lo
        if a_last is not None and abs(a_new - a_last) < 0.05 * width:
            a_new = a_lo + 0.5 * width
        a_last = a_new
        r_new = origin + a_new * d_hat
        energy, force, fnorm = run.evaluate(r_new, eager_converge=True)
        theta = angle_theta(force, d_full) if fnorm > 0.0 else 90.0
        cand = (abs(theta - 90.0), theta, r_new, energy, force, fnorm, a_new)
        if cand[0] < best[0]:
            best = cand
        if theta_lo <= theta <= theta_hi:
            return r_new, energy, force, fnorm, a_new
        g_new = -float(np.dot(force, d_hat))
        if theta > theta_hi:
            a_hi, g_hi = a_new, g_new
        else:
            a_lo, g_lo = a_new, g_new

    run.event("refine-exhausted", alpha=best[6], theta=best[1])
    return best[2], best[3], best[4], best[5], best[6]


def run_acc_cg(potential, r0, params: AccCgParams = AccCgParams(), *,
               record_trajectory: bool = False,
               line_search_override: Optional[Callable] = None) -> RunReport:
    """Relax r0 with the accelerated conjugate-gradient driver.

    line_search_override, when given, is called as override(r, d_hat, force)
    and must return the step length to accept along d_hat; the angle window
    and secant machinery are bypassed (used for exact-line-search studies).
    """
    p = params
    run = RunContext(potential, p.f_tol, p.max_evals, record_trajectory)
    r = np.array(r0, dtype=float)
    d_prev = None
    f_prev_acc = None  # force at the previous accepted point
    s_prev = None      # last accepted displacement
    alpha_prev = None
    energy, force, fnorm = 0.0, np.zeros_like(r), float("inf")

    try:
        energy, force, fnorm = run.evaluate(r, eager_converge=True)
        while True:
            run.step += 1

            if d_prev is None:
                beta, d = 0.0, force
            else:
                try:
                    beta = beta_pr(force, f_prev_acc)
                except ZeroDenominatorError:
                    beta = 0.0
                    run.event("beta-fallback")
                d = force + beta * d_prev
                if not np.any(d) or float(np.dot(force, d)) <= 0.0:
                    # conjugate direction lost descent: restart from the force
                    run.event("direction-reset", beta=beta)
                    beta, d = 0.0, force
            if not np.any(d):
                raise DegenerateDirectionError("zero force and zero direction")
            run.event("new-direction", beta=beta)
            d_hat = d / np.linalg.norm(d)

            if alpha_prev is None:
                alpha = p.default_step
            else:
                alpha = newton_initial_step(force, d_hat, f_prev_acc, s_prev,
                                            p.default_step)
                alpha = min(alpha, p.cap_factor * alpha_prev)

            origin_r, origin_f = r, force
            if line_search_override is not None:
                a_acc = float(line_search_override(origin_r, d_hat, origin_f))
                r_acc = origin_r + a_acc * d_hat
                e_acc, f_acc, fn_acc = run.evaluate(r_acc, eager_converge=True)
            else:
                trial = alpha
                while True:
                    r_t = origin_r + trial * d_hat
                    e_t, f_t, fn_t = run.evaluate(r_t, eager_converge=True)
                    theta = angle_theta(f_t, d) if fn_t > 0.0 else 90.0
                    if theta < p.theta_lo:
                        trial *= 2.0
                        run.event("step-doubling", alpha=trial, theta=theta)
                        continue
                    if theta > p.theta_hi:
                        r_acc, e_acc, f_acc, fn_acc, a_acc = secant_refine(
                            run, origin_r, d_hat, d, trial, origin_f, f_t, e_t,
                            p.theta_lo, p.theta_hi, p.max_refines)
                    else:
                        r_acc, e_acc, f_acc, fn_acc, a_acc = r_t, e_t, f_t, fn_t, trial
                    break
                theta_acc = angle_theta(f_acc, d) if fn_acc > 0.0 else 90.0
                run.event("accept", alpha=a_acc, theta=theta_acc)

            s_prev = r_acc - origin_r
            alpha_prev = a_acc
            f_prev_acc = origin_f
            d_prev = d
            r, energy, force, fnorm = r_acc, e_acc, f_acc, fn_acc
    except _ConvergedSignal as sig:
        return run.report(True, "converged", sig.r, sig.energy, sig.fnorm)
    except BudgetExhausted:
        return run.report(False, "budget-exceeded", r, energy, fnorm)
    except EvaluationError:
        return run.report(False, "diverged", r, energy, fnorm)
    except DegenerateDirectionError:
        return run.report(True, "stationary", r, energy, fnorm)
