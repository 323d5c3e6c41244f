"""Monte Carlo tolerance studies and the velocity-sweep discriminator.

Perturbation entries are tolerance bounds in the sense of the proposal
("aligned to within ..."): samples are drawn from N(0, bound/3) and
truncated at the bound, so no sample violates the stated tolerance.  The
deterministic worst case (every parameter at its bound) is reported
alongside the sampled statistics.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import AtomSpecies
from .errors import PhysicsDomainError
from .interferometer import (
    GeometryA,
    GeometryB,
    InterferometerResult,
    run_geometry_a,
    run_geometry_b,
)


@dataclass(frozen=True)
class PerturbationSpec:
    """Tolerance bounds for the misalignment Monte Carlo."""

    theta_sigma: float = 0.0                 # rad, trajectory tilt bound
    offset_sigma: float = 0.0                # fraction of waist, impact offset bound
    intensity_imbalance_sigma: float = 0.0   # relative intensity bound (geometry A)
    n_samples: int = 1
    rng_seed: int = 0

    def __post_init__(self):
        if min(self.theta_sigma, self.offset_sigma, self.intensity_imbalance_sigma) < 0:
            raise PhysicsDomainError("perturbation bounds must be non-negative")
        if self.n_samples < 1:
            raise PhysicsDomainError("n_samples must be >= 1")


@dataclass
class SweepSample:
    inputs: dict
    stark_residual: float
    ohmw_signal: float
    error: str | None = None


@dataclass
class SweepResult:
    samples: list
    summary: dict
    rng_seed: int

    @property
    def stark_residuals(self) -> np.ndarray:
        return np.array([s.stark_residual for s in self.samples if s.error is None])

    @property
    def ohmw_signals(self) -> np.ndarray:
        return np.array([s.ohmw_signal for s in self.samples if s.error is None])


def _summary_stats(values: np.ndarray) -> dict:
    return {
        "mean": float(np.mean(values)),
        "std": float(np.std(values)),
        "p95": float(np.percentile(np.abs(values), 95)),
    }


def _sample_bounded(rng: np.random.Generator, bound: float, size: int) -> np.ndarray:
    """N(0, bound/3) truncated at +-bound (resampled, never clipped)."""
    if bound == 0.0:
        return np.zeros(size)
    x = rng.normal(0.0, bound / 3.0, size)
    while True:
        bad = np.abs(x) > bound
        if not bad.any():
            return x
        x[bad] = rng.normal(0.0, bound / 3.0, int(bad.sum()))


def _perturbed_run(geometry, atom, alpha, theta, offset, imbalance) -> InterferometerResult:
    if isinstance(geometry, GeometryB):
        g = replace(geometry, misalignment_theta=theta, impact_offset=offset)
        return run_geometry_b(g, atom, alpha)
    if isinstance(geometry, GeometryA):
        if theta or offset:
            raise PhysicsDomainError("tilt/offset perturbations apply to geometry B only")
        if imbalance:
            beam_r = replace(
                geometry.beam_right,
                peak_amplitude=geometry.beam_right.peak_amplitude * np.sqrt(1.0 + imbalance),
            )
            geometry = replace(geometry, beam_right=beam_r)
        return run_geometry_a(geometry, atom, alpha, integrate_forces=False)
    raise PhysicsDomainError(f"unknown geometry {type(geometry).__name__}")


def monte_carlo(geometry, perturb: PerturbationSpec, atom: AtomSpecies, alpha: float) -> SweepResult:
    """Sample misalignments within the stated bounds and collect residuals.

    Deterministic for a given rng_seed; per-sample failures are recorded,
    not fatal.
    """
    rng = np.random.default_rng(perturb.rng_seed)
    n = perturb.n_samples
    thetas = _sample_bounded(rng, perturb.theta_sigma, n)
    offsets = _sample_bounded(rng, perturb.offset_sigma, n)
    imbalances = _sample_bounded(rng, perturb.intensity_imbalance_sigma, n)

    samples = []
    for theta, offset, imbalance in zip(thetas, offsets, imbalances):
        inputs = {
            "theta_rad": float(theta),
            "offset_waists": float(offset),
            "intensity_imbalance": float(imbalance),
        }
        try:
            result = _perturbed_run(geometry, atom, alpha, theta, offset, imbalance)
            samples.append(
                SweepSample(
                    inputs=inputs,
                    stark_residual=result.stark_residual,
                    ohmw_signal=result.ohmw_signal,
                )
            )
        except PhysicsDomainError as exc:
            samples.append(SweepSample(inputs=inputs, stark_residual=np.nan,
                                       ohmw_signal=np.nan, error=str(exc)))

    ok_stark = np.array([s.stark_residual for s in samples if s.error is None])
    ok_ohmw = np.array([s.ohmw_signal for s in samples if s.error is None])
    summary = {
        "stark_residual": _summary_stats(ok_stark),
        "ohmw_signal": _summary_stats(ok_ohmw),
        "n_failed": sum(1 for s in samples if s.error is not None),
    }
    return SweepResult(samples=samples, summary=summary, rng_seed=perturb.rng_seed)


def worst_case(geometry, perturb: PerturbationSpec, atom: AtomSpecies, alpha: float) -> InterferometerResult:
    """Deterministic run with every perturbation at its bound."""
    return _perturbed_run(
        geometry, atom, alpha,
        perturb.theta_sigma, perturb.offset_sigma, perturb.intensity_imbalance_sigma,
    )


def fit_dynamical_geometric(velocities, phases):
    """Least-squares fit of phase(v) = a/v + b.

    Returns (a, b, residual_norm); ``b`` is the velocity-independent
    (geometric) component, ``a/v`` the dynamical one.
    """
    velocities = np.asarray(velocities, float)
    phases = np.asarray(phases, float)
    if len(np.unique(velocities)) < 2:
        raise PhysicsDomainError("velocity sweep needs at least two distinct velocities")
    design = np.column_stack([1.0 / velocities, np.ones_like(velocities)])
    coeffs, _, rank, _ = np.linalg.lstsq(design, phases, rcond=None)
    if rank < 2:
        raise PhysicsDomainError("singular velocity-sweep fit")
    residual = phases - design @ coeffs
    return float(coeffs[0]), float(coeffs[1]), float(np.linalg.norm(residual))


def velocity_sweep(geometry: GeometryA, atom: AtomSpecies, alpha: float, velocities) -> dict:
    """Separate geometric from dynamical phase by sweeping the atom speed.

    Runs the right arm at each speed and fits its interaction phase
    (stark + ohmw; the kinetic term is common-mode in the arm difference)
    to a/v + b.
    """
    velocities = list(velocities)
    if len(velocities) < 3:
        raise PhysicsDomainError("velocity sweep needs at least 3 velocities")
    phases = []
    for v in velocities:
        g = replace(geometry, atom_speed=float(v))
        result = run_geometry_a(g, atom, alpha, integrate_forces=False)
        phases.append(result.phase_right.stark + result.phase_right.ohmw)
    a, b, residual = fit_dynamical_geometric(velocities, phases)
    return {"fit_a_over_v": a, "fit_const": b, "residual_norm": residual}
