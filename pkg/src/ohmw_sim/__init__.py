"""Forces, trajectories and interferometric phases of a polarizable atom in
classical laser fields, including the optical He-McKellar-Wilkens phase."""

from .core import (
    CONST,
    AtomSpecies,
    LaserSpec,
    MediumParams,
    PhysicalConstants,
    ProfileKind,
    SaturationResult,
    effective_mass_correction,
    entrance_velocity_change,
    load_species,
    momentum_densities,
    polarizability_approx,
    polarizability_full,
    rabi_frequency,
    saturation_and_emission,
)
from .dynamics import (
    BalazsResult,
    ForceModel,
    RecoilSign,
    Trajectory,
    TrajectoryState,
    balazs_experiment,
    force_at,
    integrate,
)
from .errors import ConfigError, PhysicsDomainError
from .fields import (
    BeamProfile,
    CounterpropagatingPair,
    CycleAveraged,
    Envelope,
    GaussianEnvelope,
    PlaneWave,
    SmoothstepEdgesEnvelope,
    SquareEnvelope,
    Superposition,
    TravelingPulse,
    beam_amplitude_profile,
    cycle_averaged,
    cycle_averaged_numeric,
    gaussian_beam_from_laser,
    instantaneous_fields,
    propagation_direction,
)
from .interferometer import (
    GeometryA,
    GeometryB,
    InterferometerResult,
    recoil_velocity,
    run_geometry_a,
    run_geometry_b,
    standard_geometry_a,
    standard_geometry_b,
)
from .phases import (
    PhaseBreakdown,
    estimate_phases,
    exact_lagrangian_phase,
    field_amplitudes,
    ohmw_loop,
    phase_along,
    static_hmw_phase,
)
from .sensitivity import (
    PerturbationSpec,
    SweepResult,
    SweepSample,
    fit_dynamical_geometric,
    monte_carlo,
    velocity_sweep,
    worst_case,
)

__version__ = "1.0.0"

__all__ = [
    "CONST",
    "AtomSpecies",
    "LaserSpec",
    "MediumParams",
    "PhysicalConstants",
    "ProfileKind",
    "SaturationResult",
    "effective_mass_correction",
    "entrance_velocity_change",
    "load_species",
    "momentum_densities",
    "polarizability_approx",
    "polarizability_full",
    "rabi_frequency",
    "saturation_and_emission",
    "BalazsResult",
    "ForceModel",
    "RecoilSign",
    "Trajectory",
    "TrajectoryState",
    "balazs_experiment",
    "force_at",
    "integrate",
    "ConfigError",
    "PhysicsDomainError",
    "BeamProfile",
    "CounterpropagatingPair",
    "CycleAveraged",
    "Envelope",
    "GaussianEnvelope",
    "PlaneWave",
    "SmoothstepEdgesEnvelope",
    "SquareEnvelope",
    "Superposition",
    "TravelingPulse",
    "beam_amplitude_profile",
    "cycle_averaged",
    "cycle_averaged_numeric",
    "gaussian_beam_from_laser",
    "instantaneous_fields",
    "propagation_direction",
    "GeometryA",
    "GeometryB",
    "InterferometerResult",
    "recoil_velocity",
    "run_geometry_a",
    "run_geometry_b",
    "standard_geometry_a",
    "standard_geometry_b",
    "PhaseBreakdown",
    "estimate_phases",
    "exact_lagrangian_phase",
    "field_amplitudes",
    "ohmw_loop",
    "phase_along",
    "static_hmw_phase",
    "PerturbationSpec",
    "SweepResult",
    "SweepSample",
    "fit_dynamical_geometric",
    "monte_carlo",
    "velocity_sweep",
    "worst_case",
]
