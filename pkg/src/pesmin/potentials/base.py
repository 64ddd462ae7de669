"""Potential abstraction: energy/force evaluation, counting, finite-difference checks."""

import threading
from typing import NamedTuple, Optional

import numpy as np


class EvaluationError(RuntimeError):
    """A potential produced a non-finite energy or force.

    Carries the offending coordinates so a failed relaxation can be replayed.
    """

    def __init__(self, message, coords=None):
        super().__init__(message)
        self.coords = None if coords is None else np.array(coords, dtype=float)


class PesEvaluation(NamedTuple):
    energy: float
    force: np.ndarray  # -grad U, same shape as the input coordinates


def as_coords(r, dim: Optional[int] = None) -> np.ndarray:
    """Validate and normalize a coordinate vector.

    Returns a fresh 1-D float64 copy. Raises ValueError on wrong rank/dimension
    or non-finite entries.
    """
    arr = np.asarray(r, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"coordinates must be a 1-D vector, got shape {arr.shape}")
    if dim is not None and arr.size != dim:
        raise ValueError(f"expected {dim} coordinates, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"coordinates contain non-finite entries: {arr}")
    return arr.copy()


class Potential:
    """Base class for a potential-energy surface U(r).

    Subclasses implement `_compute(r) -> (energy, force)` with force = -grad U.
    `evaluate` wraps it with input/output validation; `energy` is a separate
    uncounted path used by finite-difference checks and nothing else.
    """

    dim: Optional[int] = None  # expected coordinate count; None = any

    def _compute(self, r: np.ndarray):
        raise NotImplementedError

    def evaluate(self, r) -> PesEvaluation:
        x = as_coords(r, self.dim)
        with np.errstate(all="ignore"):  # overflow surfaces as EvaluationError below
            energy, force = self._compute(x)
        force = np.asarray(force, dtype=float)
        if force.shape != x.shape:
            raise EvaluationError(
                f"force shape {force.shape} does not match coordinates {x.shape}", x)
        if not (np.isfinite(energy) and np.all(np.isfinite(force))):
            raise EvaluationError(
                f"non-finite evaluation at r={x}: U={energy}, F={force}", x)
        return PesEvaluation(float(energy), force)

    def energy(self, r) -> float:
        """Energy-only path. Not routed through evaluation counters."""
        x = as_coords(r, self.dim)
        with np.errstate(all="ignore"):
            energy, _ = self._compute(x)
        if not np.isfinite(energy):
            raise EvaluationError(f"non-finite energy at r={x}: U={energy}", x)
        return float(energy)

    def force(self, r) -> np.ndarray:
        return self.evaluate(r).force


class CountingPotential(Potential):
    """Wrapper that counts force evaluations on the wrapped potential.

    Counts only `evaluate` calls; the energy-only path passes through uncounted.
    Incrementing is lock-protected so concurrent benchmark runs stay exact.
    """

    def __init__(self, inner: Potential):
        self.inner = inner
        self.dim = inner.dim
        self._lock = threading.Lock()
        self._n_evals = 0

    @property
    def n_evals(self) -> int:
        return self._n_evals

    def reset(self):
        with self._lock:
            self._n_evals = 0

    def evaluate(self, r) -> PesEvaluation:
        result = self.inner.evaluate(r)
        with self._lock:
            self._n_evals += 1
        return result

    def energy(self, r) -> float:
        return self.inner.energy(r)


def ensure_counting(potential: Potential):
    """Return the potential itself if it exposes n_evals, else a counting wrapper.

    Duck-typed so composite potentials (e.g. a band over a counted surface)
    can report underlying-surface evaluations instead of composite calls.
    """
    if hasattr(potential, "n_evals"):
        return potential
    return CountingPotential(potential)


def numerical_gradient(potential: Potential, r, h: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of U at r using the energy-only path.

    Independent check on analytic forces: potential.force(r) should equal
    -numerical_gradient(potential, r) to O(h^2). Does not touch evaluation
    counters. h must be positive.
    """
    if not h > 0:
        raise ValueError(f"step h must be positive, got {h}")
    x = as_coords(r, potential.dim)
    grad = np.empty_like(x)
    for i in range(x.size):
        step = np.zeros_like(x)
        step[i] = h
        grad[i] = (potential.energy(x + step) - potential.energy(x - step)) / (2.0 * h)
    return grad


def numerical_force(potential: Potential, r, h: float = 1e-5) -> np.ndarray:
    return -numerical_gradient(potential, r, h)
