from .acc_cg import AccCgParams, newton_initial_step, run_acc_cg, secant_refine
from .aare import THETA_CONJ, THETA_RESET, AareParams, run_aare
from .common import (BudgetExhausted, DegenerateDirectionError, Event, RunContext,
                     RunReport, ZeroDenominatorError, angle_theta, beta_fr, beta_hs,
                     beta_pr, euler_step, fire_velocity_mix)
from .fire import FireParams, run_fire, run_fire_variant
from .reference import ReferenceParams, find_minimum, golden_section, run_reference

OPTIMIZER_NAMES = ("fire", "fire-sd", "fire-pr", "aare-pr", "aare-fr",
                   "acc-cg", "ref-sd", "ref-cg")


def run_optimizer(name: str, potential, r0, *, f_tol: float = 0.01,
                  max_evals: int = 100000, record_trajectory: bool = False,
                  params=None) -> RunReport:
    """Dispatch a relaxation by driver name (see OPTIMIZER_NAMES).

    When params is None a default parameter record is built carrying f_tol and
    max_evals; an explicit params object wins over those two arguments.
    """
    kw = dict(record_trajectory=record_trajectory)
    if name == "fire":
        return run_fire(potential, r0, params or FireParams(
            f_tol=f_tol, max_evals=max_evals), **kw)
    if name in ("fire-sd", "fire-pr"):
        return run_fire_variant(potential, r0, name.split("-")[1],
                                params or FireParams(f_tol=f_tol, max_evals=max_evals),
                                **kw)
    if name in ("aare-pr", "aare-fr"):
        return run_aare(potential, r0, name.split("-")[1],
                        params or AareParams(f_tol=f_tol, max_evals=max_evals), **kw)
    if name == "acc-cg":
        return run_acc_cg(potential, r0,
                          params or AccCgParams(f_tol=f_tol, max_evals=max_evals), **kw)
    if name in ("ref-sd", "ref-cg"):
        return run_reference(potential, r0, name.split("-")[1],
                             params or ReferenceParams(f_tol=f_tol,
                                                       max_evals=max_evals), **kw)
    raise ValueError(
        f"unknown optimizer {name!r}; available: {', '.join(OPTIMIZER_NAMES)}")


__all__ = [
    "OPTIMIZER_NAMES", "run_optimizer",
    "RunReport", "Event", "RunContext", "BudgetExhausted",
    "DegenerateDirectionError", "ZeroDenominatorError",
    "angle_theta", "beta_hs", "beta_pr", "beta_fr",
    "euler_step", "fire_velocity_mix",
    "FireParams", "run_fire", "run_fire_variant",
    "AareParams", "run_aare", "THETA_CONJ", "THETA_RESET",
    "AccCgParams", "run_acc_cg", "newton_initial_step", "secant_refine",
    "ReferenceParams", "run_reference", "golden_section", "find_minimum",
]
