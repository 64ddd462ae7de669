"""Shared pieces for the relaxation drivers: reports, events, directions, Euler."""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..potentials.base import Potential, ensure_counting


class DegenerateDirectionError(ValueError):
    """A direction operation received a zero-length vector."""


class ZeroDenominatorError(ArithmeticError):
    """A conjugacy coefficient hit a zero denominator; callers fall back to beta=0."""


@dataclass
class Event:
    """Tagged record of something the driver did besides a plain step."""
    step: int
    kind: str
    info: dict = field(default_factory=dict)


@dataclass
class RunReport:
    """Outcome of one relaxation run.

    n_force_evals is the counting-wrapper delta over the run; norm_history has
    one (evals_so_far, force_norm) row per evaluation, and trajectory (when
    recorded) has the matching positions, one row per evaluation.
    """
    converged: bool
    stop_reason: str  # converged | budget-exceeded | stationary | diverged
    n_force_evals: int
    final_coords: np.ndarray
    final_energy: float
    final_force_norm: float
    norm_history: List[Tuple[int, float]]
    events: List[Event]
    trajectory: Optional[List[np.ndarray]] = None


def angle_theta(u, v) -> float:
    """Angle between two vectors in degrees, in [0, 180].

    The cosine is clamped before arccos so parallel vectors with rounding noise
    stay at exactly 0/180. Zero-length input is degenerate.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise DegenerateDirectionError("angle undefined for zero-length vector")
    c = float(np.dot(u, v) / (nu * nv))
    return math.degrees(math.acos(max(-1.0, min(1.0, c))))


def beta_hs(f_new, f_prev, d_prev) -> float:
    y = f_new - f_prev
    denom = float(np.dot(d_prev, y))
    if denom == 0.0:
        raise ZeroDenominatorError("d_prev . (f_new - f_prev) is zero")
    return float(np.dot(f_new, y)) / denom


def beta_pr(f_new, f_prev) -> float:
    denom = float(np.dot(f_prev, f_prev))
    if denom == 0.0:
        raise ZeroDenominatorError("|f_prev|^2 is zero")
    return float(np.dot(f_new, f_new - f_prev)) / denom


def beta_fr(f_new, f_prev) -> float:
    denom = float(np.dot(f_prev, f_prev))
    if denom == 0.0:
        raise ZeroDenominatorError("|f_prev|^2 is zero")
    return float(np.dot(f_new, f_new)) / denom


def euler_step(r, v, f, dt, mass: float = 1.0, semi_implicit: bool = False):
    """One explicit Euler step; returns (r_new, v_new).

    Forward (default) advances the position with the pre-update velocity, so a
    step from rest leaves the position unchanged. semi_implicit uses the
    updated velocity instead.
    """
    v_new = v + (f / mass) * dt
    r_new = r + (v_new if semi_implicit else v) * dt
    return r_new, v_new


def fire_velocity_mix(v, f, alpha: float):
    """v <- (1 - alpha) v + alpha |v| f_hat."""
    fnorm = np.linalg.norm(f)
    if fnorm == 0.0:
        raise DegenerateDirectionError("cannot mix velocity toward a zero force")
    return (1.0 - alpha) * v + alpha * np.linalg.norm(v) * (f / fnorm)


def redirect_speed(v, d):
    """v <- |v| d_hat: keep the current speed, take the new direction."""
    n = np.linalg.norm(d)
    if n == 0.0:
        raise DegenerateDirectionError("cannot redirect along a zero direction")
    return np.linalg.norm(v) * d / n


class BudgetExhausted(Exception):
    pass


class _ConvergedSignal(Exception):
    """Internal: an evaluation satisfied the force tolerance (eager-check drivers)."""

    def __init__(self, r, energy, force, fnorm):
        super().__init__("converged")
        self.r, self.energy, self.force, self.fnorm = r, energy, force, fnorm


class RunContext:
    """Bookkeeping shared by all drivers: counted evaluations, history, events."""

    def __init__(self, potential: Potential, f_tol: float, max_evals: int,
                 record_trajectory: bool = False):
        self.pot = ensure_counting(potential)
        self.f_tol = f_tol
        self.max_evals = max_evals
        self._base = self.pot.n_evals
        self.norm_history: List[Tuple[int, float]] = []
        self.trajectory = [] if record_trajectory else None
        self.events: List[Event] = []
        self.step = 0  # driver-maintained iteration counter for event tagging

    @property
    def used(self) -> int:
        return self.pot.n_evals - self._base

    def evaluate(self, r, eager_converge: bool = False):
        """Counted evaluation returning (energy, force, fnorm).

        Raises BudgetExhausted when max_evals would be exceeded; with
        eager_converge, raises _ConvergedSignal when the point satisfies f_tol.
        """
        if self.used >= self.max_evals:
            raise BudgetExhausted()
        energy, force = self.pot.evaluate(r)
        fnorm = float(np.linalg.norm(force))
        self.norm_history.append((self.used, fnorm))
        if self.trajectory is not None:
            self.trajectory.append(np.array(r, dtype=float))
        if eager_converge and fnorm < self.f_tol:
            raise _ConvergedSignal(np.array(r, dtype=float), energy, force, fnorm)
        return energy, force, fnorm

    def event(self, kind: str, **info):
        self.events.append(Event(self.step, kind, info))

    def report(self, converged: bool, reason: str, r, energy: float,
               fnorm: float) -> RunReport:
        return RunReport(
            converged=converged, stop_reason=reason, n_force_evals=self.used,
            final_coords=np.array(r, dtype=float), final_energy=float(energy),
            final_force_norm=float(fnorm), norm_history=self.norm_history,
            events=self.events, trajectory=self.trajectory)
