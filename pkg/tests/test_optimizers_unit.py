"""Unit-level checks for the relaxation building blocks."""

import numpy as np
import pytest

from pesmin.optimizers import (AccCgParams, AareParams, DegenerateDirectionError,
                               FireParams, OPTIMIZER_NAMES, ReferenceParams,
                               ZeroDenominatorError, angle_theta, beta_fr, beta_hs,
                               beta_pr, euler_step, find_minimum, fire_velocity_mix,
                               golden_section, newton_initial_step, run_aare,
                               run_fire_variant, run_optimizer, run_reference,
                               secant_refine)
from pesmin.optimizers.common import RunContext, redirect_speed
from pesmin.potentials import catalog_lookup

from conftest import Quadratic


# ---------------------------------------------------------------------------
# direction algebra
# ---------------------------------------------------------------------------

def test_angle_theta_basic():
    assert angle_theta([1.0, 0.0], [0.0, 1.0]) == pytest.approx(90.0)
    assert angle_theta([1.0, 2.0], [-2.0, -4.0]) == pytest.approx(180.0)
    assert angle_theta([2.0, 1.0], [-1.0, 2.0]) == pytest.approx(90.0)


def test_angle_theta_clamps_parallel_rounding():
    u = np.array([0.1, 0.2, 0.3])
    # scaling by a power of two is exact: cosine is exactly +-1
    assert angle_theta(u, 4.0 * u) == 0.0
    assert angle_theta(u, -4.0 * u) == 180.0
    # non-exact scaling may round the cosine either side of 1; arccos must
    # never see a value outside [-1, 1]
    theta = angle_theta(u, 3.7 * u)
    assert np.isfinite(theta) and 0.0 <= theta < 1e-5


def test_angle_theta_rejects_zero_vector():
    with pytest.raises(DegenerateDirectionError):
        angle_theta(np.zeros(2), np.ones(2))
    with pytest.raises(DegenerateDirectionError):
        angle_theta(np.ones(2), np.zeros(2))


def test_beta_formulas():
    f_new = np.array([1.0, -2.0, 0.5])
    f_prev = np.array([0.5, 1.0, -1.0])
    d_prev = np.array([2.0, 0.0, 1.0])
    y = f_new - f_prev
    assert beta_pr(f_new, f_prev) == pytest.approx(
        float(f_new @ y) / float(f_prev @ f_prev))
    assert beta_fr(f_new, f_prev) == pytest.approx(
        float(f_new @ f_new) / float(f_prev @ f_prev))
    assert beta_hs(f_new, f_prev, d_prev) == pytest.approx(
        float(f_new @ y) / float(d_prev @ y))


def test_beta_zero_denominators_raise():
    f = np.array([1.0, 0.0])
    with pytest.raises(ZeroDenominatorError):
        beta_pr(f, np.zeros(2))
    with pytest.raises(ZeroDenominatorError):
        beta_fr(f, np.zeros(2))
    # d_prev orthogonal to the force change
    with pytest.raises(ZeroDenominatorError):
        beta_hs(np.array([1.0, 1.0]), np.array([1.0, 0.0]), np.array([1.0, 0.0]))


def test_redirect_speed_preserves_magnitude():
    v = np.array([3.0, -4.0])
    d = np.array([0.0, 10.0])
    out = redirect_speed(v, d)
    assert np.linalg.norm(out) == pytest.approx(5.0, abs=1e-12)
    assert np.allclose(out, [0.0, 5.0])
    with pytest.raises(DegenerateDirectionError):
        redirect_speed(v, np.zeros(2))


# ---------------------------------------------------------------------------
# integrator and velocity mixing
# ---------------------------------------------------------------------------

def test_forward_euler_from_rest_keeps_position():
    r = np.array([1.0, 2.0])
    f = np.array([4.0, -6.0])
    r_new, v_new = euler_step(r, np.zeros(2), f, dt=0.5)
    assert np.array_equal(r_new, r)
    assert np.array_equal(v_new, f * 0.5)


def test_semi_implicit_euler_moves_with_updated_velocity():
    r = np.array([1.0, 2.0])
    f = np.array([4.0, -6.0])
    r_new, v_new = euler_step(r, np.zeros(2), f, dt=0.5, semi_implicit=True)
    assert np.allclose(v_new, f * 0.5)
    assert np.allclose(r_new, r + v_new * 0.5)


def test_euler_step_mass_scaling():
    _, v_new = euler_step(np.zeros(2), np.zeros(2), np.array([4.0, 0.0]),
                          dt=0.5, mass=2.0)
    assert np.allclose(v_new, [1.0, 0.0])


def test_velocity_mix_endpoints():
    v = np.array([1.0, -2.0])
    f = np.array([0.0, 3.0])
    # alpha = 0 returns the velocity untouched, alpha = 1 the redirected speed
    assert np.array_equal(fire_velocity_mix(v, f, 0.0), v)
    full = fire_velocity_mix(v, f, 1.0)
    assert np.allclose(full, [0.0, np.linalg.norm(v)])
    with pytest.raises(DegenerateDirectionError):
        fire_velocity_mix(v, np.zeros(2), 0.5)


def test_velocity_mix_interior_value():
    v = np.array([2.0, 0.0])
    f = np.array([0.0, 1.0])
    out = fire_velocity_mix(v, f, 0.25)
    assert np.allclose(out, [1.5, 0.5])


# ---------------------------------------------------------------------------
# line-search pieces
# ---------------------------------------------------------------------------

def test_golden_section_locates_parabola_minimum():
    assert golden_section(lambda x: (x - 2.0) ** 2, 0.0, 5.0,
                          tol=1e-8) == pytest.approx(2.0, abs=1e-7)
    # asymmetric quartic with minimum at 1
    assert golden_section(lambda x: (x - 1.0) ** 4 + 0.1 * x, -3.0, 4.0,
                          tol=1e-8) == pytest.approx(0.7076, abs=1e-3)
    with pytest.raises(ValueError):
        golden_section(lambda x: x * x, 0.0, 1.0, tol=0.0)


def test_newton_initial_step_exact_on_quadratic(spd_quadratic):
    pot = spd_quadratic
    r = pot.center + np.array([1.0, 1.0])
    force = pot.evaluate(r).force
    d_hat = force / np.linalg.norm(force)
    # history displacement parallel to the new direction: the curvature probe
    # equals d_hat . A . d_hat and the estimate is the exact line minimum
    s_prev = 0.37 * d_hat
    f_prev = pot.evaluate(r - s_prev).force
    alpha = newton_initial_step(force, d_hat, f_prev, s_prev)
    exact = float(force @ d_hat) / float(d_hat @ pot.a @ d_hat)
    assert alpha == pytest.approx(exact, rel=1e-10)


def test_newton_initial_step_fallbacks(spd_quadratic):
    pot = spd_quadratic
    r = pot.center + np.array([1.0, 1.0])
    force = pot.evaluate(r).force
    d_hat = force / np.linalg.norm(force)
    assert newton_initial_step(force, d_hat, None, None, 0.3) == 0.3
    # orthogonal history: zero projection
    s_perp = np.array([-d_hat[1], d_hat[0]])
    f_prev = pot.evaluate(r - s_perp).force
    assert newton_initial_step(force, d_hat, f_prev, s_perp, 0.3) == 0.3
    # ascent direction: the 1-D estimate goes negative
    alpha = newton_initial_step(-force, d_hat, pot.evaluate(r - 0.3 * d_hat).force,
                                0.3 * d_hat, 0.25)
    assert alpha == 0.25


def test_secant_refine_one_update_on_quadratic(spd_quadratic):
    # g(alpha) is linear on a quadratic, so the first secant update lands on
    # the line minimum exactly and the window test passes with one evaluation
    pot = spd_quadratic
    origin = pot.center + np.array([2.0, 1.0])
    f_origin = pot.evaluate(origin).force
    d_hat = f_origin / np.linalg.norm(f_origin)
    exact = float(f_origin @ d_hat) / float(d_hat @ pot.a @ d_hat)
    alpha_hi = 3.0 * exact
    e_hi, f_hi = pot.evaluate(origin + alpha_hi * d_hat)

    run = RunContext(pot, f_tol=1e-12, max_evals=100)
    r, energy, force, fnorm, alpha = secant_refine(
        run, origin, d_hat, d_hat, alpha_hi, f_origin, f_hi, e_hi)
    assert run.used == 1
    assert alpha == pytest.approx(exact, rel=1e-10)
    assert 80.0 <= angle_theta(force, d_hat) <= 100.0
    assert not any(ev.kind == "refine-exhausted" for ev in run.events)


def test_secant_refine_rejects_bad_bracket(spd_quadratic):
    pot = spd_quadratic
    origin = pot.center + np.array([2.0, 1.0])
    f_origin = pot.evaluate(origin).force
    d_hat = f_origin / np.linalg.norm(f_origin)
    run = RunContext(pot, f_tol=1e-12, max_evals=100)
    with pytest.raises(ValueError, match="bracket"):
        # force at the far end still points along d_hat: nothing was overshot
        secant_refine(run, origin, d_hat, d_hat, 0.01, f_origin, f_origin, 0.0)


# ---------------------------------------------------------------------------
# driver dispatch and stop reasons
# ---------------------------------------------------------------------------

def test_run_optimizer_dispatches_every_name(spd_quadratic):
    start = np.array([4.0, 4.0])
    for name in OPTIMIZER_NAMES:
        report = run_optimizer(name, spd_quadratic, start, f_tol=1e-4)
        assert report.converged, name
        assert np.allclose(report.final_coords, spd_quadratic.center,
                           atol=1e-3), name


def test_run_optimizer_unknown_name(spd_quadratic):
    with pytest.raises(ValueError, match="available"):
        run_optimizer("bfgs", spd_quadratic, np.zeros(2))


def test_explicit_params_win_over_keywords(spd_quadratic):
    report = run_optimizer("fire", spd_quadratic, np.array([40.0, 40.0]),
                           f_tol=1e-12, max_evals=100000,
                           params=FireParams(max_evals=7))
    assert report.stop_reason == "budget-exceeded"
    assert report.n_force_evals == 7


def test_variant_name_validation(spd_quadratic):
    with pytest.raises(ValueError, match="variant"):
        run_fire_variant(spd_quadratic, np.zeros(2), "cg")
    with pytest.raises(ValueError, match="variant"):
        run_aare(spd_quadratic, np.zeros(2), "hs")
    with pytest.raises(ValueError, match="method"):
        run_reference(spd_quadratic, np.zeros(2), "newton")


def test_zero_force_start_reports_stationary(spd_quadratic):
    # exactly zero force cannot satisfy f_tol = 0 but is still a fixed point
    for name in ("fire", "fire-sd", "aare-pr", "acc-cg", "ref-cg"):
        report = run_optimizer(name, spd_quadratic, spd_quadratic.center,
                               f_tol=0.0, max_evals=100)
        assert report.converged, name
        assert report.stop_reason == "stationary", name
        assert report.final_force_norm == 0.0


def test_diverged_stop_reason():
    # speed preservation has no step bound: the steep quartic walls of this
    # surface launch the trajectory out of floating-point range, and the
    # driver reports that honestly instead of burning the budget
    gp = catalog_lookup("goldstein_price")
    report = run_aare(gp, gp.start, "pr", AareParams(f_tol=0.01, max_evals=5000))
    assert not report.converged
    assert report.stop_reason == "diverged"
    assert report.n_force_evals < 100


def test_find_minimum_api():
    booth = catalog_lookup("booth")
    coords, energy = find_minimum(booth, booth.start, f_tol=1e-8)
    assert np.allclose(coords, [1.0, 3.0], atol=1e-6)
    assert energy == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(RuntimeError, match="did not reach"):
        find_minimum(booth, booth.start, f_tol=1e-8, max_evals=5)


def test_report_shape(spd_quadratic):
    report = run_optimizer("fire", spd_quadratic, np.array([4.0, 4.0]),
                           f_tol=1e-5, record_trajectory=True)
    assert report.n_force_evals == len(report.norm_history)
    assert len(report.trajectory) == len(report.norm_history)
    # norm_history rows are (evals_so_far, |F|) with evals 1..n
    counts = [n for n, _ in report.norm_history]
    assert counts == list(range(1, report.n_force_evals + 1))
    assert report.norm_history[-1][1] == report.final_force_norm
    assert np.array_equal(report.trajectory[-1], report.final_coords)
