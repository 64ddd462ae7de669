"""Angle-adaptive redirection engine.

Keeps the inertial engine's explicit-Euler advance and adaptive time step but
drops the latency counter and the brake-to-zero. Each iteration redirects the
full speed along a conjugate direction d_k = F_k + beta_k d_{k-1}, where the
coefficient comes from the angle Theta between the current force and the
previous direction:

    Theta <  90   conjugate band (Polak-Ribiere or Fletcher-Reeves), dt grows
    90 <= Theta < 120   conservative band (Hestenes-Stiefel), dt shrinks
    Theta >= 120  reset to steepest descent (beta = 0), dt unchanged

After the advance, the force at the trial point is checked against the step
direction: if it points more than 120 degrees away the step overshot a valley,
so the position is restored exactly, the speed and dt are halved, and the step
is retaken once. Trial forces are cached and reused as the next iteration's
current force, so each unique position costs exactly one evaluation.
"""

from dataclasses import dataclass

import numpy as np

from ..potentials.base import EvaluationError
from .common import (BudgetExhausted, DegenerateDirectionError, RunContext,
                     RunReport, ZeroDenominatorError, angle_theta, beta_fr,
                     beta_hs, beta_pr, euler_step, redirect_speed)

THETA_CONJ = 90.0
THETA_RESET = 120.0


@dataclass
class AareParams:
    dt_start: float = 0.1
    dt_max: float = 1.0
    f_inc: float = 1.1
    f_dec: float = 0.5
    mass: float = 1.0
    f_tol: float = 0.01
    max_evals: int = 100000
    semi_implicit: bool = False


def run_aare(potential, r0, variant: str = "pr", params: AareParams = AareParams(), *,
             record_trajectory: bool = False) -> RunReport:
    """Relax r0 with the angle-adaptive engine.

    variant selects the conjugate-band coefficient: 'pr' (Polak-Ribiere) or
    'fr' (Fletcher-Reeves). The middle band always uses Hestenes-Stiefel.
    """
    if variant not in ("pr", "fr"):
        raise ValueError(f"variant must be 'pr' or 'fr', got {variant!r}")
    conj_beta = beta_pr if variant == "pr" else beta_fr

    p = params
    run = RunContext(potential, p.f_tol, p.max_evals, record_trajectory)
    r = np.array(r0, dtype=float)
    v = np.zeros_like(r)
    dt = p.dt_start
    d_prev = None
    f_prev = None
    band_prev = None
    force = None  # force at r; None marks it stale (evaluate at loop top)
    energy, fnorm = 0.0, float("inf")

    try:
        while True:
            run.step += 1
            if force is None:
                energy, force, fnorm = run.evaluate(r)
            if fnorm < p.f_tol:
                return run.report(True, "converged", r, energy, fnorm)

            # direction from the angle band
            theta = None
            if d_prev is None:
                d = force
                band = "sd"
            else:
                theta = angle_theta(force, d_prev)
                if theta < THETA_CONJ:
                    band = variant
                    try:
                        beta = conj_beta(force, f_prev)
                    except ZeroDenominatorError:
                        beta, band = 0.0, "sd"
                        run.event("beta-fallback", variant=variant, theta=theta)
                elif theta < THETA_RESET:
                    band = "hs"
                    try:
                        beta = beta_hs(force, f_prev, d_prev)
                    except ZeroDenominatorError:
                        beta, band = 0.0, "sd"
                        run.event("beta-fallback", variant="hs", theta=theta)
                else:
                    beta, band = 0.0, "sd"
                d = force + beta * d_prev
                if not np.any(d):
                    d = force
                    run.event("degenerate-direction", theta=theta)
                if band != band_prev:
                    run.event("direction-switch", band=band, theta=theta,
                              beta=0.0 if band == "sd" else beta)
            band_prev = band

            # redirect the full speed along d
            v = redirect_speed(v, d)

            # time-step update from the same angle
            if theta is not None:
                if theta < THETA_CONJ:
                    grown = min(dt * p.f_inc, p.dt_max)
                    if grown != dt:
                        run.event("dt-increase", dt=grown)
                    dt = grown
                elif theta < THETA_RESET:
                    dt *= p.f_dec
                    run.event("dt-decrease", dt=dt)

            # advance and probe the landing point
            v_pre = v
            r_new, v_new = euler_step(r, v, force, dt, p.mass, p.semi_implicit)
            if np.array_equal(r_new, r):  # no motion (start from rest): reuse force
                e_new, f_new, fn_new = energy, force, fnorm
            else:
                e_new, f_new, fn_new = run.evaluate(r_new)

            f_prev, d_prev = force, d

            if fn_new > 0.0 and angle_theta(f_new, d) > THETA_RESET:
                # overshot the valley: retake the step from the same origin at
                # half speed and half dt, and refresh the force next iteration
                dt *= p.f_dec
                speed = float(np.linalg.norm(v_pre))
                run.event("overshoot-backtrack", dt=dt, origin=r.copy(),
                          overshot=r_new.copy(), speed_before=speed,
                          speed_after=speed / 2.0)
                r, v = euler_step(r, v_pre / 2.0, force, dt, p.mass, p.semi_implicit)
                force = None
            else:
                r, v = r_new, v_new
                energy, force, fnorm = e_new, f_new, fn_new
    except BudgetExhausted:
        return run.report(False, "budget-exceeded", r, energy, fnorm)
    except EvaluationError:
        # speed preservation has no step bound; surfaces that are steep enough
        # at the start can launch the trajectory past floating-point range
        return run.report(False, "diverged", r, energy, fnorm)
    except DegenerateDirectionError:
        return run.report(True, "stationary", r, energy, fnorm)
