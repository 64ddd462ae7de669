"""Fast inertial relaxation engine and its velocity-redirection variants.

The base engine damps molecular-dynamics velocities toward the force direction
and adapts the time step from the power P = F.v: uphill motion (P <= 0) brakes
to a stop and shrinks dt, persistent downhill motion grows dt and fades the
mixing toward plain MD.

The variants keep the adaptive machinery but replace the velocity mix: `sd`
redirects the full speed along the current force, `pr` along a conjugate
direction d_k = F_k + beta_k d_{k-1} with the Polak-Ribiere coefficient.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..potentials.base import EvaluationError
from .common import (BudgetExhausted, DegenerateDirectionError, RunContext,
                     RunReport, ZeroDenominatorError, beta_pr, euler_step,
                     fire_velocity_mix, redirect_speed)


@dataclass
class FireParams:
    alpha_start: float = 0.1
    f_alpha: float = 0.99
    f_inc: float = 1.1
    f_dec: float = 0.5
    dt_start: float = 0.1
    dt_max: float = 1.0  # 10 x dt_start
    n_min: int = 5
    mass: float = 1.0
    f_tol: float = 0.01
    max_evals: int = 100000
    semi_implicit: bool = False
    # displacement cap per iteration; None disables. Steep starts (forces in
    # the thousands) need this or the first free flight leaves the basin
    max_step: Optional[float] = 0.2
    # literal reading brakes whenever P <= 0, which halves dt on the very first
    # step from rest; default only brakes on P < 0 or nonzero uphill velocity
    brake_at_rest: bool = False


def _run_fire_machinery(potential, r0, params: FireParams, mix: str,
                        record_trajectory: bool) -> RunReport:
    p = params
    run = RunContext(potential, p.f_tol, p.max_evals, record_trajectory)
    r = np.array(r0, dtype=float)
    v = np.zeros_like(r)
    dt = p.dt_start
    alpha = p.alpha_start
    n_up = 0
    d_prev = None
    f_prev = None
    energy, force, fnorm = 0.0, np.zeros_like(r), float("inf")

    try:
        while True:
            run.step += 1
            energy, force, fnorm = run.evaluate(r)
            if fnorm < p.f_tol:
                return run.report(True, "converged", r, energy, fnorm)

            power = float(np.dot(force, v))

            if mix == "fire":
                v = fire_velocity_mix(v, force, alpha)
            else:
                if mix == "pr" and f_prev is not None:
                    try:
                        beta = beta_pr(force, f_prev)
                    except ZeroDenominatorError:
                        beta = 0.0
                        run.event("beta-fallback", variant="pr")
                    d = force + beta * d_prev
                    if not np.any(d):
                        d = force
                        run.event("degenerate-direction")
                else:
                    d = force
                v = redirect_speed(v, d)
                d_prev, f_prev = d, force

            if power > 0.0:
                n_up += 1
                if n_up > p.n_min:
                    grown = min(dt * p.f_inc, p.dt_max)
                    if grown != dt:
                        run.event("dt-increase", dt=grown)
                    dt = grown
                    alpha *= p.f_alpha
            elif power < 0.0 or np.any(v) or p.brake_at_rest:
                run.event("brake", power=power, dt=dt * p.f_dec)
                dt *= p.f_dec
                v = np.zeros_like(r)
                alpha = p.alpha_start
                n_up = 0

            r_new, v = euler_step(r, v, force, dt, p.mass, p.semi_implicit)
            if p.max_step is not None:
                dr = r_new - r
                length = np.linalg.norm(dr)
                if length > p.max_step:
                    r_new = r + dr * (p.max_step / length)
            r = r_new
    except BudgetExhausted:
        return run.report(False, "budget-exceeded", r, energy, fnorm)
    except EvaluationError:
        return run.report(False, "diverged", r, energy, fnorm)
    except DegenerateDirectionError:
        # exactly zero force: stationary even if f_tol is 0
        return run.report(True, "stationary", r, energy, fnorm)


def run_fire(potential, r0, params: FireParams = FireParams(), *,
             record_trajectory: bool = False) -> RunReport:
    """Relax r0 on the potential with the inertial engine until |F| < f_tol."""
    return _run_fire_machinery(potential, r0, params, "fire", record_trajectory)


def run_fire_variant(potential, r0, which: str, params: FireParams = FireParams(), *,
                     record_trajectory: bool = False) -> RunReport:
    """Run the `sd` or `pr` redirection variant of the inertial engine.

    Both pin the mixing fully onto the chosen direction (the equivalent of
    alpha = 1 with no decay); everything else matches run_fire.
    """
    if which not in ("sd", "pr"):
        raise ValueError(f"variant must be 'sd' or 'pr', got {which!r}")
    return _run_fire_machinery(potential, r0, params, which, record_trajectory)
