import math

import numpy as np
import pytest

from ohmw_sim import (
    CONST,
    PerturbationSpec,
    PhysicsDomainError,
    fit_dynamical_geometric,
    monte_carlo,
    polarizability_full,
    standard_geometry_a,
    standard_geometry_b,
    velocity_sweep,
    worst_case,
)
from ohmw_sim.sensitivity import _sample_bounded


@pytest.fixture(scope="module")
def geometry_b(sg_laser, atom):
    return standard_geometry_b(sg_laser, atom, 670.977e-9)


@pytest.fixture(scope="module")
def sg_alpha(sg_laser, atom):
    return polarizability_full(atom, sg_laser.omega_L, sg_laser.peak_amplitude)


def test_perturbation_spec_validation():
    with pytest.raises(PhysicsDomainError):
        PerturbationSpec(theta_sigma=-1e-4)
    with pytest.raises(PhysicsDomainError):
        PerturbationSpec(n_samples=0)


def test_sample_bounded_respects_bound():
    rng = np.random.default_rng(0)
    x = _sample_bounded(rng, 0.5, 10000)
    assert np.all(np.abs(x) <= 0.5)
    assert np.std(x) == pytest.approx(0.5 / 3.0, rel=0.05)
    assert np.all(_sample_bounded(rng, 0.0, 100) == 0.0)


def test_monte_carlo_deterministic(geometry_b, atom, sg_alpha):
    spec = PerturbationSpec(
        theta_sigma=math.radians(0.02), offset_sigma=0.02, n_samples=16, rng_seed=42
    )
    r1 = monte_carlo(geometry_b, spec, atom, sg_alpha)
    r2 = monte_carlo(geometry_b, spec, atom, sg_alpha)
    assert r1.summary == r2.summary
    assert np.array_equal(r1.stark_residuals, r2.stark_residuals)
    r3 = monte_carlo(geometry_b, spec.__class__(**{**spec.__dict__, "rng_seed": 43}),
                     atom, sg_alpha)
    assert not np.array_equal(r1.stark_residuals, r3.stark_residuals)
    assert r1.summary["n_failed"] == 0


def test_worst_case_matches_direct_run(geometry_b, atom, sg_alpha):
    from dataclasses import replace

    from ohmw_sim import run_geometry_b

    spec = PerturbationSpec(theta_sigma=math.radians(0.02), offset_sigma=0.02, n_samples=1)
    worst = worst_case(geometry_b, spec, atom, sg_alpha)
    direct = run_geometry_b(
        replace(geometry_b, misalignment_theta=math.radians(0.02), impact_offset=0.02),
        atom,
        sg_alpha,
    )
    assert worst.stark_residual == direct.stark_residual
    assert worst.ohmw_signal == direct.ohmw_signal


def test_fit_recovers_synthetic_coefficients():
    v = np.array([300.0, 500.0, 800.0, 1200.0, 2000.0])
    phases = 7.5 / v - 0.012
    a, b, resid = fit_dynamical_geometric(v, phases)
    assert a == pytest.approx(7.5, rel=1e-12)
    assert b == pytest.approx(-0.012, rel=1e-12)
    assert resid < 1e-12
    with pytest.raises(PhysicsDomainError):
        fit_dynamical_geometric([100.0, 100.0], [1.0, 1.0])


def test_velocity_sweep_separates_components(laser, atom, alpha):
    g = standard_geometry_a(laser)
    fit = velocity_sweep(g, atom, alpha, [500.0, 700.0, 1000.0, 1400.0, 2000.0])
    e_sq = laser.peak_amplitude**2
    # dynamical (Stark) coefficient: per-arm alpha e_sq L / (4 hbar)
    expected_a = alpha * e_sq * 0.05 / (4 * CONST.hbar)
    # geometric (OHMW) constant: per-arm -alpha e_sq L / (2 hbar c)
    expected_b = -alpha * e_sq * 0.05 / (2 * CONST.hbar * CONST.c)
    assert fit["fit_a_over_v"] == pytest.approx(expected_a, rel=1e-9)
    assert fit["fit_const"] == pytest.approx(expected_b, rel=1e-6)
    assert fit["residual_norm"] < 1e-6 * abs(expected_b)


def test_monte_carlo_geometry_a_imbalance(laser, atom, alpha):
    g = standard_geometry_a(laser)
    spec = PerturbationSpec(intensity_imbalance_sigma=1e-3, n_samples=8, rng_seed=5)
    result = monte_carlo(g, spec, atom, alpha)
    assert result.summary["n_failed"] == 0
    # residuals scale with the sampled imbalance, bounded by the worst case
    worst = worst_case(g, spec, atom, alpha)
    assert np.all(np.abs(result.stark_residuals) <= abs(worst.stark_residual) * (1 + 1e-9))
