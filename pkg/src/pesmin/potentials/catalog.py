"""Analytic benchmark surfaces for the minimizer comparisons.

Unconstrained test functions from the classical optimization collections,
exposed as potentials (force = -grad). Each entry records the benchmark start
point per supported dimension. The extended/generalized forms follow the usual
pairwise or chained constructions, so most entries also work at n=4.

One catalog sometimes listed alongside these (SCEQ) has no reproducible closed
form in the sources available here and is deliberately omitted.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Tuple

import numpy as np

from .base import Potential


class UnknownFunctionError(LookupError):
    pass


# ---------------------------------------------------------------------------
# function bodies: each returns (value, gradient)
# ---------------------------------------------------------------------------

def _himmelblau(x):
    ### pairwise form; 2D: start (0,0), minima include (3,2) with f=0
    a = x[0::2]
    b = x[1::2]
    p = a * a + b - 11.0
    q = a + b * b - 7.0
    f = np.sum(p * p + q * q)
    g = np.empty_like(x)
    g[0::2] = 4.0 * a * p + 2.0 * q
    g[1::2] = 2.0 * p + 4.0 * b * q
    return f, g


def _goldstein_price(x):
    ### start (-1,-1); f_min = 3 at (0,-1)
    u, v = x[0], x[1]
    s = u + v + 1.0
    a = 19.0 - 14.0 * u + 3.0 * u * u - 14.0 * v + 6.0 * u * v + 3.0 * v * v
    A = 1.0 + s * s * a
    da = -14.0 + 6.0 * u + 6.0 * v  # same for u and v
    dA = 2.0 * s * a + s * s * da
    t = 2.0 * u - 3.0 * v
    b = 18.0 - 32.0 * u + 12.0 * u * u + 48.0 * v - 36.0 * u * v + 27.0 * v * v
    B = 30.0 + t * t * b
    dB_u = 4.0 * t * b + t * t * (-32.0 + 24.0 * u - 36.0 * v)
    dB_v = -6.0 * t * b + t * t * (48.0 - 36.0 * u + 54.0 * v)
    f = A * B
    g = np.array([dA * B + A * dB_u, dA * B + A * dB_v])
    return f, g


def _extended_beale(x):
    ### pairwise Beale; 2D: start (0,0), f_min = 0 at (3, 0.5)
    a = x[0::2]
    b = x[1::2]
    t1 = 1.5 - a * (1.0 - b)
    t2 = 2.25 - a * (1.0 - b * b)
    t3 = 2.625 - a * (1.0 - b * b * b)
    f = np.sum(t1 * t1 + t2 * t2 + t3 * t3)
    g = np.empty_like(x)
    g[0::2] = -2.0 * (t1 * (1.0 - b) + t2 * (1.0 - b * b) + t3 * (1.0 - b * b * b))
    g[1::2] = 2.0 * a * (t1 + 2.0 * b * t2 + 3.0 * b * b * t3)
    return f, g


def _rosenbrock(x):
    ### pairwise (uncoupled) form; 2D: start (-1.2, 1), f_min = 0 at (1,1)
    a = x[0::2]
    b = x[1::2]
    r = b - a * a
    f = np.sum(100.0 * r * r + (1.0 - a) ** 2)
    g = np.empty_like(x)
    g[0::2] = -400.0 * a * r - 2.0 * (1.0 - a)
    g[1::2] = 200.0 * r
    return f, g


def _hager(x):
    i = np.arange(1, x.size + 1, dtype=float)
    e = np.exp(x)
    return np.sum(e - np.sqrt(i) * x), e - np.sqrt(i)


def _booth(x):
    ### start (0,-5); f_min = 0 at (1,3)
    u, v = x[0], x[1]
    p = u + 2.0 * v - 7.0
    q = 2.0 * u + v - 5.0
    return p * p + q * q, np.array([2.0 * p + 4.0 * q, 4.0 * p + 2.0 * q])


def _raydan1(x):
    i = np.arange(1, x.size + 1, dtype=float)
    e = np.exp(x)
    return np.sum((i / 10.0) * (e - x)), (i / 10.0) * (e - 1.0)


def _extended_penalty(x):
    s = np.sum(x * x) - 0.25
    f = np.sum((x[:-1] - 1.0) ** 2) + s * s
    g = 4.0 * s * x
    g[:-1] += 2.0 * (x[:-1] - 1.0)
    return f, g


def _diagonal1(x):
    i = np.arange(1, x.size + 1, dtype=float)
    e = np.exp(x)
    return np.sum(e - i * x), e - i


def _diagonal2(x):
    i = np.arange(1, x.size + 1, dtype=float)
    e = np.exp(x)
    return np.sum(e - x / i), e - 1.0 / i


def _diagonal3(x):
    i = np.arange(1, x.size + 1, dtype=float)
    e = np.exp(x)
    return np.sum(e - i * np.sin(x)), e - i * np.cos(x)


def _tridiagonal1(x):
    p = x[:-1] + x[1:] - 3.0
    q = x[:-1] - x[1:] + 1.0
    f = np.sum(p * p + q ** 4)
    g = np.zeros_like(x)
    g[:-1] += 2.0 * p + 4.0 * q ** 3
    g[1:] += 2.0 * p - 4.0 * q ** 3
    return f, g


def _extended_tet(x):
    ### pairwise three-exponential terms
    a = x[0::2]
    b = x[1::2]
    e1 = np.exp(a + 3.0 * b - 0.1)
    e2 = np.exp(a - 3.0 * b - 0.1)
    e3 = np.exp(-a - 0.1)
    f = np.sum(e1 + e2 + e3)
    g = np.empty_like(x)
    g[0::2] = e1 + e2 - e3
    g[1::2] = 3.0 * (e1 - e2)
    return f, g


def _generalized_psc1(x):
    # sin^2 + cos^2 terms are constant per index but keep the printed value
    q = x[:-1] ** 2 + x[1:] ** 2 + x[:-1] * x[1:]
    f = np.sum(q * q) + (x.size - 1)
    g = np.zeros_like(x)
    g[:-1] += 2.0 * q * (2.0 * x[:-1] + x[1:])
    g[1:] += 2.0 * q * (2.0 * x[1:] + x[:-1])
    return f, g


def _full_hessian_fh2(x):
    ### 2D: start (0.01, 0.01), f_min = 0 at (5, -4)
    s = np.cumsum(x)
    r = s[1:] - 1.0
    f = (x[0] - 5.0) ** 2 + np.sum(r * r)
    # d/dx_j sum_i>=2 (s_i - 1)^2 = 2 * sum_{i >= max(j,2)} r_i
    tail = np.concatenate((np.cumsum(r[::-1])[::-1], [0.0]))  # tail[j] = sum r_i, i>=j+2
    g = 2.0 * np.concatenate(([tail[0]], tail[:-1]))
    g[0] += 2.0 * (x[0] - 5.0)
    return f, g


def _extended_bd1(x):
    ### pairwise; f_min = 0 at (1,1)
    a = x[0::2]
    b = x[1::2]
    p = a * a + b * b - 2.0
    e = np.exp(a - 1.0)
    q = e - b
    f = np.sum(p * p + q * q)
    g = np.empty_like(x)
    g[0::2] = 4.0 * a * p + 2.0 * q * e
    g[1::2] = 4.0 * b * p - 2.0 * q
    return f, g


def _extended_maratos(x):
    ### pairwise; start (1.1, 0.1)
    a = x[0::2]
    b = x[1::2]
    p = a * a + b * b - 1.0
    f = np.sum(a + 100.0 * p * p)
    g = np.empty_like(x)
    g[0::2] = 1.0 + 400.0 * a * p
    g[1::2] = 400.0 * b * p
    return f, g


def _quadratic_qf1(x):
    i = np.arange(1, x.size + 1, dtype=float)
    f = 0.5 * np.sum(i * x * x) - x[-1]
    g = i * x
    g[-1] -= 1.0
    return f, g


def _perturbed_quadratic(x):
    i = np.arange(1, x.size + 1, dtype=float)
    s = np.sum(x)
    f = np.sum(i * x * x) + s * s / 100.0
    return f, 2.0 * i * x + (2.0 / 100.0) * s


def _fletcher(x):
    ### chained FLETCHCR
    t = x[1:] - x[:-1] + 1.0 - x[:-1] ** 2
    f = np.sum(100.0 * t * t)
    g = np.zeros_like(x)
    g[:-1] += 200.0 * t * (-1.0 - 2.0 * x[:-1])
    g[1:] += 200.0 * t
    return f, g


def _tridia(x):
    i = np.arange(2, x.size + 1, dtype=float)
    t = 2.0 * x[1:] - x[:-1]
    f = (x[0] - 1.0) ** 2 + np.sum(i * t * t)
    g = np.zeros_like(x)
    g[0] = 2.0 * (x[0] - 1.0)
    g[1:] += 4.0 * i * t
    g[:-1] += -2.0 * i * t
    return f, g


def _arwhead(x):
    p = x[:-1] ** 2 + x[-1] ** 2
    f = np.sum(p * p - 4.0 * x[:-1] + 3.0)
    g = np.zeros_like(x)
    g[:-1] = 4.0 * x[:-1] * p - 4.0
    g[-1] += np.sum(4.0 * x[-1] * p)
    return f, g


def _eg2(x):
    t = x[0] + x[:-1] ** 2 - 1.0
    f = np.sum(np.sin(t)) + 0.5 * math.sin(x[-1] ** 2)
    c = np.cos(t)
    g = np.zeros_like(x)
    g[0] = np.sum(c)
    g[:-1] += c * 2.0 * x[:-1]
    g[-1] += x[-1] * math.cos(x[-1] ** 2)
    return f, g


def _liarwhd(x):
    p = x * x - x[0]
    f = np.sum(4.0 * p * p + (x - 1.0) ** 2)
    g = 16.0 * x * p + 2.0 * (x - 1.0)
    g[0] -= np.sum(8.0 * p)
    return f, g


def _power(x):
    i = np.arange(1, x.size + 1, dtype=float)
    return np.sum((i * x) ** 2), 2.0 * i * i * x


def _engval1(x):
    p = x[:-1] ** 2 + x[1:] ** 2
    f = np.sum(p * p) + np.sum(-4.0 * x[:-1] + 3.0)
    g = np.zeros_like(x)
    g[:-1] += 4.0 * x[:-1] * p - 4.0
    g[1:] += 4.0 * x[1:] * p
    return f, g


def _extended_trigonometric(x):
    n = x.size
    i = np.arange(1, n + 1, dtype=float)
    cos = np.cos(x)
    sin = np.sin(x)
    t = (n - np.sum(cos)) + i * (1.0 - cos) - sin
    f = np.sum(t * t)
    # dt_i/dx_k = sin x_k + [k == i] * (i sin x_i - cos x_i)
    g = np.full_like(x, 2.0 * np.sum(t)) * sin
    g += 2.0 * t * (i * sin - cos)
    return f, g


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    compute: Callable[[np.ndarray], Tuple[float, np.ndarray]]
    starts: Dict[int, Tuple[float, ...]] = field(default_factory=dict)
    even_dim: bool = False  # pairwise forms require an even coordinate count


_ENTRIES = [
    CatalogEntry("himmelblau", _himmelblau,
                 {2: (0.0, 0.0), 4: (1.0, 1.0, 1.0, 1.0)}, even_dim=True),
    CatalogEntry("goldstein_price", _goldstein_price, {2: (-1.0, -1.0)}),
    CatalogEntry("extended_beale", _extended_beale,
                 {2: (0.0, 0.0), 4: (1.0, 0.8, 1.0, 0.8)}, even_dim=True),
    CatalogEntry("rosenbrock", _rosenbrock, {2: (-1.2, 1.0)}, even_dim=True),
    CatalogEntry("hager", _hager, {2: (1.0, 1.0)}),
    CatalogEntry("booth", _booth, {2: (0.0, -5.0)}),
    CatalogEntry("raydan1", _raydan1, {2: (3.0, 2.0), 4: (1.0, 1.0, 1.0, 1.0)}),
    CatalogEntry("extended_penalty", _extended_penalty,
                 {2: (1.0, 2.0), 4: (1.0, 2.0, 3.0, 4.0)}),
    CatalogEntry("diagonal1", _diagonal1, {2: (0.5, 0.5)}),
    CatalogEntry("diagonal2", _diagonal2, {2: (1.0, 0.5)}),
    CatalogEntry("diagonal3", _diagonal3, {2: (1.0, 1.0)}),
    CatalogEntry("tridiagonal1", _tridiagonal1, {2: (2.0, 2.0)}),
    CatalogEntry("extended_tet", _extended_tet, {2: (0.1, 0.1)}, even_dim=True),
    CatalogEntry("generalized_psc1", _generalized_psc1, {2: (3.0, 0.1)}),
    CatalogEntry("full_hessian_fh2", _full_hessian_fh2, {2: (0.01, 0.01)}),
    CatalogEntry("extended_bd1", _extended_bd1, {2: (0.1, 0.1)}, even_dim=True),
    CatalogEntry("extended_maratos", _extended_maratos, {2: (1.1, 0.1)}, even_dim=True),
    CatalogEntry("quadratic_qf1", _quadratic_qf1, {2: (1.0, 1.0)}),
    CatalogEntry("perturbed_quadratic", _perturbed_quadratic, {2: (0.5, 0.5)}),
    CatalogEntry("fletcher", _fletcher, {2: (0.0, 0.0)}),
    CatalogEntry("tridia", _tridia, {2: (1.0, 1.0)}),
    CatalogEntry("arwhead", _arwhead, {2: (1.0, 1.0)}),
    CatalogEntry("eg2", _eg2, {2: (1.0, 1.0)}),
    CatalogEntry("liarwhd", _liarwhd, {2: (4.0, 4.0)}),
    CatalogEntry("power", _power, {2: (1.0, 1.0)}),
    CatalogEntry("engval1", _engval1, {2: (2.0, 2.0)}),
    CatalogEntry("extended_trigonometric", _extended_trigonometric,
                 {4: (0.2, 0.2, 0.2, 0.2)}),
]

_REGISTRY = {e.name: e for e in _ENTRIES}

# the 2D comparison suite, in benchmark-table order
SUITE_2D = [e.name for e in _ENTRIES if 2 in e.starts]
# the 4D comparison suite
SUITE_4D = ["himmelblau", "extended_beale", "raydan1", "extended_penalty",
            "extended_trigonometric"]


def _canonical(name: str) -> str:
    return name.strip().lower().replace("-", "_").replace(" ", "_")


class CatalogPotential(Potential):
    """A catalog surface pinned to a specific dimension, with its start point."""

    def __init__(self, entry: CatalogEntry, dim: int):
        self.entry = entry
        self.name = entry.name
        self.dim = dim
        self.start = np.array(entry.starts[dim], dtype=float)

    def _compute(self, r):
        value, grad = self.entry.compute(r)
        return value, -grad

    def __repr__(self):
        return f"CatalogPotential({self.name!r}, dim={self.dim})"


def catalog_names():
    return [e.name for e in _ENTRIES]


def catalog_lookup(name: str, dim: int = 2) -> CatalogPotential:
    """Look up a benchmark surface by name at the given dimension.

    Raises UnknownFunctionError for unknown names (message lists what exists)
    and ValueError when the entry has no benchmark start at that dimension.
    """
    key = _canonical(name)
    entry = _REGISTRY.get(key)
    if entry is None:
        raise UnknownFunctionError(
            f"unknown test function {name!r}; available: {', '.join(catalog_names())}")
    if dim not in entry.starts:
        have = ", ".join(str(d) for d in sorted(entry.starts))
        raise ValueError(f"{entry.name} has no benchmark start at dim {dim} (have {have})")
    if entry.even_dim and dim % 2:
        raise ValueError(f"{entry.name} requires an even dimension, got {dim}")
    return CatalogPotential(entry, dim)
