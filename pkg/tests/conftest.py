"""Shared test helpers: quasi-random sampling and small analytic surfaces."""

import numpy as np
import pytest

from pesmin.potentials.base import Potential

_PRIMES = (2, 3, 5, 7, 11, 13)


def halton_points(n: int, dim: int, lo, hi, skip: int = 20) -> np.ndarray:
    """n quasi-random points in the box [lo, hi]^dim (van der Corput per axis)."""
    lo = np.broadcast_to(np.asarray(lo, dtype=float), (dim,))
    hi = np.broadcast_to(np.asarray(hi, dtype=float), (dim,))
    out = np.empty((n, dim))
    for j in range(dim):
        base = _PRIMES[j]
        for row, i in enumerate(range(skip, skip + n)):
            f, r, x = 1.0, 0.0, i
            while x > 0:
                f /= base
                r += f * (x % base)
                x //= base
            out[row, j] = r
    return lo + out * (hi - lo)


class Quadratic(Potential):
    """U = 1/2 (r - c)^T A (r - c) for a symmetric positive-definite A."""

    def __init__(self, a, center=None):
        self.a = np.asarray(a, dtype=float)
        self.dim = self.a.shape[0]
        self.center = (np.zeros(self.dim) if center is None
                       else np.asarray(center, dtype=float))

    def _compute(self, r):
        d = r - self.center
        g = self.a @ d
        return 0.5 * float(d @ g), -g


@pytest.fixture
def spd_quadratic():
    return Quadratic([[3.0, 1.0], [1.0, 2.0]], center=[1.0, -2.0])
