"""London-Eyring-Polanyi-Sato model surfaces for pathway benchmarks.

Two 2D surfaces built from the three-atom A-B-C form with Morse-like Coulomb
and exchange integrals:

    Q(r) = d/2 * (3/2 * exp(-2 a (r - r0)) - exp(-a (r - r0)))
    J(r) = d/4 * (exp(-2 a (r - r0)) - 6 * exp(-a (r - r0)))

`leps1` keeps the three atoms collinear with r_AC = r_AB + r_BC and uses
(r_AB, r_BC) as coordinates. `leps2` fixes the A-C distance and couples r_AB
harmonically to a fourth degree of freedom x, giving the classic two-well
surface with a first-order saddle between reactant and product wells.
"""

from dataclasses import dataclass

import numpy as np

from .base import EvaluationError, Potential


@dataclass(frozen=True)
class LepsParams:
    a: float = 0.05
    b: float = 0.30
    c: float = 0.05
    d_ab: float = 4.746
    d_bc: float = 4.746
    d_ac: float = 3.445
    r0: float = 0.742
    alpha: float = 1.942
    # harmonic-coupling surface extras (leps2 only)
    r_ac_fixed: float = 3.742
    k_c: float = 0.2025
    c_scale: float = 1.154


def _q(r, d, alpha, r0):
    e2 = np.exp(-2.0 * alpha * (r - r0))
    e1 = np.exp(-alpha * (r - r0))
    return d / 2.0 * (1.5 * e2 - e1)


def _dq(r, d, alpha, r0):
    e2 = np.exp(-2.0 * alpha * (r - r0))
    e1 = np.exp(-alpha * (r - r0))
    return d / 2.0 * (-3.0 * alpha * e2 + alpha * e1)


def _j(r, d, alpha, r0):
    e2 = np.exp(-2.0 * alpha * (r - r0))
    e1 = np.exp(-alpha * (r - r0))
    return d / 4.0 * (e2 - 6.0 * e1)


def _dj(r, d, alpha, r0):
    e2 = np.exp(-2.0 * alpha * (r - r0))
    e1 = np.exp(-alpha * (r - r0))
    return d / 4.0 * (-2.0 * alpha * e2 + 6.0 * alpha * e1)


def _leps_value_grads(r_ab, r_bc, r_ac, p: LepsParams):
    """V and its partials w.r.t. the three pair distances (treated independent)."""
    sa, sb, sc = 1.0 + p.a, 1.0 + p.b, 1.0 + p.c
    qa = _q(r_ab, p.d_ab, p.alpha, p.r0) / sa
    qb = _q(r_bc, p.d_bc, p.alpha, p.r0) / sb
    qc = _q(r_ac, p.d_ac, p.alpha, p.r0) / sc
    ja = _j(r_ab, p.d_ab, p.alpha, p.r0) / sa
    jb = _j(r_bc, p.d_bc, p.alpha, p.r0) / sb
    jc = _j(r_ac, p.d_ac, p.alpha, p.r0) / sc
    s = ja * ja + jb * jb + jc * jc - ja * jb - jb * jc - ja * jc
    root = np.sqrt(max(s, 0.0))
    v = qa + qb + qc - root

    dqa = _dq(r_ab, p.d_ab, p.alpha, p.r0) / sa
    dqb = _dq(r_bc, p.d_bc, p.alpha, p.r0) / sb
    dqc = _dq(r_ac, p.d_ac, p.alpha, p.r0) / sc
    dja = _dj(r_ab, p.d_ab, p.alpha, p.r0) / sa
    djb = _dj(r_bc, p.d_bc, p.alpha, p.r0) / sb
    djc = _dj(r_ac, p.d_ac, p.alpha, p.r0) / sc
    if root > 0.0:
        ds_da = (2.0 * ja - jb - jc) * dja
        ds_db = (2.0 * jb - ja - jc) * djb
        ds_dc = (2.0 * jc - ja - jb) * djc
        dv_ab = dqa - ds_da / (2.0 * root)
        dv_bc = dqb - ds_db / (2.0 * root)
        dv_ac = dqc - ds_dc / (2.0 * root)
    else:  # degenerate ridge where the exchange terms coincide
        dv_ab, dv_bc, dv_ac = dqa, dqb, dqc
    return v, dv_ab, dv_bc, dv_ac


class Leps1(Potential):
    """Collinear surface over (r_AB, r_BC); r_AC = r_AB + r_BC."""

    dim = 2

    def __init__(self, params: LepsParams = LepsParams()):
        self.params = params

    def _compute(self, r):
        r_ab, r_bc = r[0], r[1]
        if r_ab <= 0.0 or r_bc <= 0.0:
            raise EvaluationError(f"pair distances must be positive, got {r}", r)
        v, dv_ab, dv_bc, dv_ac = _leps_value_grads(r_ab, r_bc, r_ab + r_bc, self.params)
        # r_AC rides along with both coordinates
        return v, -np.array([dv_ab + dv_ac, dv_bc + dv_ac])


class Leps2(Potential):
    """Fixed end-to-end surface over (r_AB, x) with a harmonic coupling term.

    V(r_AB, x) = V_leps(r_AB, r_AC - r_AB; r_AC) + 2 k_c (r_AB - (r_AC/2 - x/c))^2
    with r_AC held at params.r_ac_fixed.
    """

    dim = 2

    def __init__(self, params: LepsParams = LepsParams()):
        self.params = params

    def _compute(self, r):
        p = self.params
        r_ab, x = r[0], r[1]
        r_bc = p.r_ac_fixed - r_ab
        if r_ab <= 0.0 or r_bc <= 0.0:
            raise EvaluationError(
                f"r_AB must lie in (0, {p.r_ac_fixed}) for the coupled surface, got {r_ab}", r)
        v, dv_ab, dv_bc, _ = _leps_value_grads(r_ab, r_bc, p.r_ac_fixed, p)
        t = r_ab - (p.r_ac_fixed / 2.0 - x / p.c_scale)
        v = v + 2.0 * p.k_c * t * t
        g_ab = (dv_ab - dv_bc) + 4.0 * p.k_c * t
        g_x = 4.0 * p.k_c * t / p.c_scale
        return v, -np.array([g_ab, g_x])


def leps1(params: LepsParams = LepsParams()) -> Leps1:
    return Leps1(params)


def leps2(params: LepsParams = LepsParams()) -> Leps2:
    return Leps2(params)
