"""Cycle-averaged forces and trajectory integration.

The equation of motion at leading order in v/c contains the dipole gradient
force and the Roentgen/Abraham force,

    m a = (alpha/4) grad(Esqbar) + alpha mu0 d<S>/dt,

with the second term switchable to expose the force-model controversy.
Integration is fixed-step classical RK4; forces are cycle-averaged, so the
optical oscillation is never resolved.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import CONST, AtomSpecies
from .errors import PhysicsDomainError
from .fields import TravelingPulse, _envelope_timescale, cycle_averaged, propagation_direction

BETA_MAX = 0.1  # leading-order-in-beta validity guard


class ForceModel(enum.Enum):
    DIPOLE_ONLY = "dipole_only"
    DIPOLE_PLUS_ABRAHAM = "dipole_plus_abraham"


class RecoilSign(enum.Enum):
    WITH_LIGHT = "with_light"
    AGAINST_LIGHT = "against_light"


@dataclass(frozen=True)
class TrajectoryState:
    t: float
    x: tuple
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(np.asarray(self.x, float)))
        object.__setattr__(self, "v", tuple(np.asarray(self.v, float)))
        beta = np.linalg.norm(self.v) / CONST.c
        if beta >= BETA_MAX:
            raise PhysicsDomainError(f"|v|/c = {beta:.3g} violates the beta < 0.1 guard")


@dataclass
class Trajectory:
    """Uniformly sampled trajectory with simple diagnostics."""

    t: np.ndarray   # (N,)
    x: np.ndarray   # (N, 3)
    v: np.ndarray   # (N, 3)
    mass: float

    def __post_init__(self):
        self.t = np.asarray(self.t, float)
        self.x = np.asarray(self.x, float)
        self.v = np.asarray(self.v, float)
        steps = np.diff(self.t)
        if len(steps) and (steps.min() <= 0 or np.ptp(steps) > 1e-9 * steps.mean()):
            raise PhysicsDomainError("trajectory grid must be uniform and increasing")
        if self.max_beta >= BETA_MAX:
            raise PhysicsDomainError("trajectory violates the beta < 0.1 guard")

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0])

    @property
    def displacement(self) -> np.ndarray:
        return self.x[-1] - self.x[0]

    @property
    def net_impulse(self) -> np.ndarray:
        return self.mass * (self.v[-1] - self.v[0])

    @property
    def max_beta(self) -> float:
        return float(np.max(np.linalg.norm(self.v, axis=1))) / CONST.c


def force_at(model, force_model: ForceModel, alpha: float, state: TrajectoryState) -> np.ndarray:
    """Cycle-averaged force [N] on the atom at the given state."""
    x = np.asarray(state.x)
    avg = cycle_averaged(model, x, state.t)
    force = (alpha / 4.0) * avg.grad_e_sq_bar
    if force_model is ForceModel.DIPOLE_PLUS_ABRAHAM:
        force = force + alpha * CONST.mu0 * avg.dpoynting_dt
    return force


def integrate(
    model,
    force_model: ForceModel,
    alpha: float,
    atom: AtomSpecies,
    initial: TrajectoryState,
    t_end: float,
    dt: float,
) -> Trajectory:
    """Fixed-step RK4 integration of the cycle-averaged equation of motion."""
    if dt <= 0:
        raise PhysicsDomainError("dt must be positive")
    t0 = initial.t
    if t_end <= t0:
        raise PhysicsDomainError("t_end must exceed the initial time")
    tau = _envelope_timescale(model)
    if math.isfinite(tau) and dt > tau / 1e2:
        raise PhysicsDomainError(
            f"dt = {dt:.3g} s does not resolve the envelope timescale {tau:.3g} s "
            "(need >= 100 steps per feature)"
        )

    n_steps = int(round((t_end - t0) / dt))
    m = atom.mass

    def acceleration(t, x, v):
        beta = np.linalg.norm(v) / CONST.c
        if beta >= BETA_MAX:
            raise PhysicsDomainError(f"beta guard violated at t = {t:.6g} s")
        avg = cycle_averaged(model, x, t)
        force = (alpha / 4.0) * avg.grad_e_sq_bar
        if force_model is ForceModel.DIPOLE_PLUS_ABRAHAM:
            force = force + alpha * CONST.mu0 * avg.dpoynting_dt
        return force / m

    ts = t0 + dt * np.arange(n_steps + 1)
    xs = np.empty((n_steps + 1, 3))
    vs = np.empty((n_steps + 1, 3))
    xs[0] = initial.x
    vs[0] = initial.v

    x, v = xs[0].copy(), vs[0].copy()
    for i in range(n_steps):
        t = ts[i]
        k1x = v
        k1v = acceleration(t, x, v)
        k2x = v + 0.5 * dt * k1v
        k2v = acceleration(t + 0.5 * dt, x + 0.5 * dt * k1x, k2x)
        k3x = v + 0.5 * dt * k2v
        k3v = acceleration(t + 0.5 * dt, x + 0.5 * dt * k2x, k3x)
        k4x = v + dt * k3v
        k4v = acceleration(t + dt, x + dt * k3x, k4x)
        x = x + dt / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
        v = v + dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        xs[i + 1] = x
        vs[i + 1] = v

    return Trajectory(t=ts, x=xs, v=vs, mass=m)


@dataclass(frozen=True)
class BalazsResult:
    displacement: np.ndarray
    net_impulse: np.ndarray
    sign: RecoilSign
    peak_speed: float
    trajectory: Trajectory


def balazs_experiment(
    pulse: TravelingPulse,
    atom: AtomSpecies,
    alpha: float,
    force_model: ForceModel,
    dt: float | None = None,
) -> BalazsResult:
    """Single-atom Balazs scenario: a pulse sweeps over an atom at rest.

    The atom sits at the origin; integration spans the pulse's envelope
    window plus margins, so the pulse has fully passed by the end.
    """
    k_dir = propagation_direction(pulse)
    lo, hi = pulse.envelope.window()
    margin = 0.02 * (hi - lo)
    t0, t_end = lo - margin, hi + margin
    if dt is None:
        dt = pulse.envelope.timescale / 500.0

    initial = TrajectoryState(t=t0, x=(0.0, 0.0, 0.0), v=(0.0, 0.0, 0.0))
    traj = integrate(pulse, force_model, alpha, atom, initial, t_end, dt)

    # the pulse must have fully passed the (essentially stationary) atom
    residual_env = float(pulse.envelope.value(t_end))
    if residual_env > 1e-10:
        raise PhysicsDomainError("pulse has not fully passed the atom by t_end")

    along = float(traj.displacement @ k_dir)
    sign = RecoilSign.WITH_LIGHT if along > 0 else RecoilSign.AGAINST_LIGHT
    peak_speed = float(np.max(np.linalg.norm(traj.v, axis=1)))
    return BalazsResult(
        displacement=traj.displacement,
        net_impulse=traj.net_impulse,
        sign=sign,
        peak_speed=peak_speed,
        trajectory=traj,
    )
