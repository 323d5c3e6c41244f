"""Mach-Zehnder (two-beam) and single-beam LMT interferometer geometries.

Geometry A: two antiparallel traveling beams, one along each arm; atoms
traverse both arms with the same velocity, so the Stark and kinetic phases
cancel in the arm difference and the OHMW phase adds.

Geometry B: both clouds fly through the same single beam with opposite
axial velocities set by a large-momentum-transfer splitter, with optional
misalignment (tilt + transverse offset) of the trajectories.

Bragg splitters and mirrors are idealized as instantaneous momentum kicks
with common-mode phase imprints, which drop out of the arm difference.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import cos, pi, sin

import numpy as np

from .core import CONST, AtomSpecies, LaserSpec
from .dynamics import ForceModel, Trajectory, TrajectoryState, integrate
from .errors import PhysicsDomainError
from .fields import (
    BeamProfile,
    Superposition,
    gaussian_beam_from_laser,
    propagation_direction,
)
from .phases import PhaseBreakdown, phase_along


@dataclass(frozen=True)
class GeometryA:
    """Fig.-2a style two-beam Mach-Zehnder geometry."""

    beam_right: object           # field along the right arm
    beam_left: object            # field along the left arm
    arm_start_right: tuple       # m
    arm_start_left: tuple        # m
    travel_direction: tuple      # shared unit direction of atom motion
    interaction_length: float    # m
    atom_speed: float            # m/s
    arm_separation: float        # m
    n_samples: int = 2001

    def __post_init__(self):
        if self.interaction_length <= 0 or self.atom_speed <= 0:
            raise PhysicsDomainError("interaction_length and atom_speed must be positive")
        try:
            k_r = propagation_direction(self.beam_right)
            k_l = propagation_direction(self.beam_left)
        except PhysicsDomainError:
            return  # composite fields (e.g. counterpropagating pairs) carry no single direction
        if np.linalg.norm(k_r + k_l) > 1e-12:
            raise PhysicsDomainError("geometry A beams must be antiparallel")

    @property
    def splitter_stations(self) -> tuple:
        """Nominal positions of the four Bragg stations (split/mirror/mirror/recombine)."""
        d = np.asarray(self.travel_direction, float)
        start_r = np.asarray(self.arm_start_right, float)
        start_l = np.asarray(self.arm_start_left, float)
        end_r = start_r + self.interaction_length * d
        end_l = start_l + self.interaction_length * d
        return (
            tuple(0.5 * (start_r + start_l)),
            tuple(end_r),
            tuple(end_l),
            tuple(0.5 * (end_r + end_l) + self.arm_separation * d),
        )


def standard_geometry_a(
    laser: LaserSpec,
    interaction_length: float = 0.05,
    atom_speed: float = 1000.0,
    arm_separation: float = 1e-3,
    intensity_imbalance: float = 0.0,
) -> GeometryA:
    """Two antiparallel beams along the x axis, arms separated along y.

    ``intensity_imbalance`` scales the right beam's intensity by (1 + value).
    """
    half = arm_separation / 2.0
    beam_r = gaussian_beam_from_laser(laser, axis=(1, 0, 0), axis_origin=(0, half, 0))
    beam_l = gaussian_beam_from_laser(laser, axis=(-1, 0, 0), axis_origin=(0, -half, 0))
    if intensity_imbalance != 0.0:
        beam_r = replace(
            beam_r, peak_amplitude=beam_r.peak_amplitude * np.sqrt(1.0 + intensity_imbalance)
        )
    return GeometryA(
        beam_right=beam_r,
        beam_left=beam_l,
        arm_start_right=(0.0, half, 0.0),
        arm_start_left=(0.0, -half, 0.0),
        travel_direction=(1.0, 0.0, 0.0),
        interaction_length=interaction_length,
        atom_speed=atom_speed,
        arm_separation=arm_separation,
    )


@dataclass(frozen=True)
class GeometryB:
    """Fig.-2b style single-beam geometry with LMT-split counter-moving clouds."""

    beam: object
    n_recoils: int               # per-arm momentum splitting, in recoil units
    recoil_speed: float          # m/s per recoil
    interaction_time: float      # s, simultaneous ejection time
    misalignment_theta: float    # rad, trajectory tilt from the beam axis
    impact_offset: float         # closest approach, fraction of the waist
    n_samples: int = 2001

    def __post_init__(self):
        if self.n_recoils < 1:
            raise PhysicsDomainError("n_recoils must be >= 1")
        if self.recoil_speed <= 0 or self.interaction_time <= 0:
            raise PhysicsDomainError("recoil_speed and interaction_time must be positive")
        if abs(self.misalignment_theta) >= 0.1:
            raise PhysicsDomainError("|misalignment_theta| must be < 0.1 rad")

    @property
    def arm_speed(self) -> float:
        return self.n_recoils * self.recoil_speed


def recoil_velocity(atom: AtomSpecies, splitting_wavelength: float) -> float:
    """Single-photon recoil velocity hbar k / m [m/s]."""
    if splitting_wavelength <= 0:
        raise PhysicsDomainError("splitting_wavelength must be positive")
    return CONST.hbar * (2 * pi / splitting_wavelength) / atom.mass


def standard_geometry_b(
    laser: LaserSpec,
    atom: AtomSpecies,
    splitting_wavelength: float,
    n_recoils: int = 400,
    misalignment_theta: float = 0.0,
    impact_offset: float = 0.0,
    axial_path: float = 0.05,
) -> GeometryB:
    """Single beam along x; ejection time set so each arm travels ``axial_path``."""
    if n_recoils < 1:
        raise PhysicsDomainError("n_recoils must be >= 1")
    beam = gaussian_beam_from_laser(laser, axis=(1, 0, 0))
    v_rec = recoil_velocity(atom, splitting_wavelength)
    speed = n_recoils * v_rec
    return GeometryB(
        beam=beam,
        n_recoils=n_recoils,
        recoil_speed=v_rec,
        interaction_time=axial_path / speed,
        misalignment_theta=misalignment_theta,
        impact_offset=impact_offset,
    )


@dataclass(frozen=True)
class InterferometerResult:
    phase_right: PhaseBreakdown
    phase_left: PhaseBreakdown

    @property
    def delta(self) -> PhaseBreakdown:
        return self.phase_right - self.phase_left

    @property
    def stark_residual(self) -> float:
        return self.delta.stark

    @property
    def ohmw_signal(self) -> float:
        return self.delta.ohmw


def _kinematic_trajectory(start, velocity, duration, n_samples, mass) -> Trajectory:
    t = np.linspace(0.0, duration, n_samples)
    x = np.asarray(start, float) + np.outer(t, np.asarray(velocity, float))
    v = np.tile(np.asarray(velocity, float), (n_samples, 1))
    return Trajectory(t=t, x=x, v=v, mass=mass)


def run_geometry_a(
    g: GeometryA,
    atom: AtomSpecies,
    alpha: float,
    integrate_forces: bool = True,
) -> InterferometerResult:
    """Propagate both arms through the combined field and difference the phases."""
    combined = Superposition((g.beam_right, g.beam_left))
    duration = g.interaction_length / g.atom_speed
    velocity = g.atom_speed * np.asarray(g.travel_direction, float)

    arms = []
    for start in (g.arm_start_right, g.arm_start_left):
        if integrate_forces:
            dt = duration / (g.n_samples - 1)
            initial = TrajectoryState(t=0.0, x=start, v=tuple(velocity))
            traj = integrate(
                combined, ForceModel.DIPOLE_PLUS_ABRAHAM, alpha, atom, initial, duration, dt
            )
        else:
            traj = _kinematic_trajectory(start, velocity, duration, g.n_samples, atom.mass)
        arms.append(traj)

    _check_inside_beams((g.beam_right, g.beam_left), arms)
    phases = [phase_along(traj, combined, alpha, atom) for traj in arms]
    return InterferometerResult(phase_right=phases[0], phase_left=phases[1])


def run_geometry_b(
    g: GeometryB,
    atom: AtomSpecies,
    alpha: float,
    integrate_forces: bool = False,
) -> InterferometerResult:
    """Both clouds share the beam with opposite axial velocities until ejection.

    Straight-line kinematics by default: the transverse dipole force displaces
    the clouds by ~1e-3 waists over the interaction time, negligible against
    the misalignment scales of interest (set ``integrate_forces`` to check).
    """
    axis = propagation_direction(g.beam)
    # transverse unit vector for the impact offset / tilt plane
    trial = np.array([0.0, 1.0, 0.0])
    if abs(trial @ axis) > 0.9:
        trial = np.array([0.0, 0.0, 1.0])
    perp = trial - (trial @ axis) * axis
    perp /= np.linalg.norm(perp)

    if isinstance(g.beam, BeamProfile):
        start = np.asarray(g.beam.axis_origin, float) + g.impact_offset * g.beam.waist * perp
    elif g.impact_offset == 0.0:
        start = np.zeros(3)
    else:
        raise PhysicsDomainError("impact_offset requires a BeamProfile field")

    speed = g.arm_speed
    tilt = g.misalignment_theta
    direction = cos(tilt) * axis + sin(tilt) * perp

    arms = []
    for sign in (+1.0, -1.0):
        velocity = sign * speed * direction
        if integrate_forces:
            dt = g.interaction_time / (g.n_samples - 1)
            initial = TrajectoryState(t=0.0, x=tuple(start), v=tuple(velocity))
            traj = integrate(
                g.beam, ForceModel.DIPOLE_PLUS_ABRAHAM, alpha, atom, initial,
                g.interaction_time, dt,
            )
        else:
            traj = _kinematic_trajectory(start, velocity, g.interaction_time, g.n_samples, atom.mass)
        arms.append(traj)

    _check_inside_beams((g.beam,), arms)
    phases = [phase_along(traj, g.beam, alpha, atom) for traj in arms]
    return InterferometerResult(phase_right=phases[0], phase_left=phases[1])


def _check_inside_beams(beams, trajectories):
    """Reject trajectories that leave every beam's transverse capture range."""
    profiles = [b for b in beams if isinstance(b, BeamProfile)]
    if not profiles:
        return
    for traj in trajectories:
        inside = np.zeros(len(traj.t), dtype=bool)
        for beam in profiles:
            axis = np.asarray(beam.axis)
            rel = traj.x - np.asarray(beam.axis_origin)
            r_perp = np.linalg.norm(rel - np.outer(rel @ axis, axis), axis=1)
            inside |= r_perp <= 3.0 * beam.waist
        if not inside.all():
            raise PhysicsDomainError("trajectory exits the beam(s) transversely")
