"""Atomic species data, laser specification and two-level response quantities.

All quantities are SI throughout the package.  The two-level polarizability,
saturation parameter, excited-state population and spontaneous-emission time
are the standard far-detuned expressions for a closed transition driven by a
classical field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib
from importlib import resources

import numpy as np
from scipy.constants import atomic_mass, c, epsilon_0, hbar, mu_0, pi

from .errors import ConfigError, PhysicsDomainError


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants used by the simulation (CODATA via scipy.constants)."""

    c: float = c            # speed of light [m/s]
    hbar: float = hbar      # reduced Planck constant [J s]
    eps0: float = epsilon_0  # vacuum permittivity [C^2 / N m^2]
    mu0: float = mu_0       # vacuum permeability [N / A^2]
    amu: float = atomic_mass  # atomic mass unit [kg]

    def __post_init__(self):
        for name in ("c", "hbar", "eps0", "mu0", "amu"):
            if getattr(self, name) <= 0:
                raise PhysicsDomainError(f"constant {name} must be positive")
        # mu0 is a measured quantity post-2019 SI, so the identity is inexact
        if abs(self.mu0 * self.eps0 * self.c**2 - 1.0) > 1e-9:
            raise PhysicsDomainError("mu0 * eps0 * c^2 != 1")


CONST = PhysicalConstants()


@dataclass(frozen=True)
class AtomSpecies:
    """Two-level atom: mass, transition frequency, dipole matrix element, linewidth.

    ``gamma`` is the natural linewidth as an angular rate (rad/s), i.e.
    2*pi times the linewidth in Hz.
    """

    name: str
    mass: float      # kg
    omega_a: float   # transition angular frequency [rad/s]
    d_ge: float      # dipole matrix element magnitude [C m]
    gamma: float     # natural linewidth [rad/s]

    def __post_init__(self):
        for name in ("mass", "omega_a", "d_ge", "gamma"):
            if getattr(self, name) <= 0:
                raise PhysicsDomainError(f"AtomSpecies.{name} must be positive")
        if self.gamma / self.omega_a >= 1e-3:
            raise PhysicsDomainError(
                "gamma/omega_a = %.3g violates the narrow-line assumption"
                % (self.gamma / self.omega_a)
            )


_SPECIES_KEYS = {"name", "mass_amu", "wavelength_nm", "gamma_over_2pi_hz", "d_ge_si"}


def load_species(path=None) -> AtomSpecies:
    """Load an AtomSpecies from a TOML key-value file.

    Expected keys: name, mass_amu, wavelength_nm, gamma_over_2pi_hz, d_ge_si.
    Unknown or missing keys raise ConfigError naming the offending key.
    When ``path`` is None the packaged lithium-7 D2 data file is used.
    """
    if path is None:
        text = resources.files("ohmw_sim.data").joinpath("li7.toml").read_text()
    else:
        with open(path, "rb") as fh:
            text = fh.read().decode()
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"species file: {exc}") from exc

    unknown = set(raw) - _SPECIES_KEYS
    if unknown:
        raise ConfigError(f"species file: unknown key '{sorted(unknown)[0]}'")
    missing = _SPECIES_KEYS - set(raw)
    if missing:
        raise ConfigError(f"species file: missing key '{sorted(missing)[0]}'")
    for key in _SPECIES_KEYS - {"name"}:
        if not isinstance(raw[key], (int, float)) or isinstance(raw[key], bool):
            raise ConfigError(f"species file: key '{key}' must be a number")

    return AtomSpecies(
        name=str(raw["name"]),
        mass=raw["mass_amu"] * CONST.amu,
        omega_a=2 * pi * CONST.c / (raw["wavelength_nm"] * 1e-9),
        d_ge=raw["d_ge_si"],
        gamma=2 * pi * raw["gamma_over_2pi_hz"],
    )


_PROFILE_KINDS = ("gaussian", "super_gaussian", "flat_top")


@dataclass(frozen=True)
class ProfileKind:
    """Transverse beam profile family; ``order`` applies to super_gaussian."""

    kind: str = "gaussian"
    order: int = 1

    def __post_init__(self):
        if self.kind not in _PROFILE_KINDS:
            raise PhysicsDomainError(f"unknown profile kind '{self.kind}'")
        if self.kind == "super_gaussian":
            if not isinstance(self.order, int) or self.order < 1:
                raise PhysicsDomainError("super_gaussian order must be an integer >= 1")


@dataclass(frozen=True)
class LaserSpec:
    """Laser wavelength, power, waist and transverse profile."""

    wavelength: float  # m
    power: float       # W
    waist: float       # m
    profile: ProfileKind = field(default_factory=ProfileKind)

    def __post_init__(self):
        if self.wavelength <= 0:
            raise PhysicsDomainError("wavelength must be positive")
        if self.power < 0:
            raise PhysicsDomainError("power must be non-negative")
        if self.waist <= 0:
            raise PhysicsDomainError("waist must be positive")

    @property
    def omega_L(self) -> float:
        """Laser angular frequency [rad/s]."""
        return 2 * pi * CONST.c / self.wavelength

    @property
    def peak_intensity(self) -> float:
        """On-axis intensity [W/m^2] from P = I0 * integral of the profile.

        For a Gaussian this is the familiar I0 = 2 P / (pi w^2); other
        profiles use their own normalization integral.
        """
        from .fields import profile_power_factor  # local import avoids a cycle

        return 2 * self.power / (pi * self.waist**2 * profile_power_factor(self.profile))

    @property
    def peak_amplitude(self) -> float:
        """On-axis electric field amplitude [N/C], E = sqrt(2 I / (c eps0))."""
        return math.sqrt(2 * self.peak_intensity / (CONST.c * CONST.eps0))


@dataclass(frozen=True)
class MediumParams:
    """Dilute-medium constitutive parameters built from a polarizability.

    n^2 = 1 + alpha / (eps0 * volume) holds by construction; the medium is
    non-magnetic (mu_r = 1).
    """

    alpha: float    # C^2 m / N
    volume: float   # m^3
    n: float        # refractive index
    eps_r: float
    mu_r: float = 1.0

    @classmethod
    def from_polarizability(cls, alpha: float, volume: float) -> "MediumParams":
        if volume <= 0:
            raise PhysicsDomainError("volume must be positive")
        n_sq = 1.0 + alpha / (CONST.eps0 * volume)
        if n_sq <= 0:
            raise PhysicsDomainError("alpha/volume too negative: n^2 <= 0")
        return cls(alpha=alpha, volume=volume, n=math.sqrt(n_sq), eps_r=n_sq)

    def __post_init__(self):
        n_sq = 1.0 + self.alpha / (CONST.eps0 * self.volume)
        if abs(self.n**2 - n_sq) > 1e-12 * abs(n_sq):
            raise PhysicsDomainError("n inconsistent with alpha and volume")
        if self.mu_r != 1.0:
            raise PhysicsDomainError("single-atom / dilute-gas medium must have mu_r = 1")


def rabi_frequency(atom: AtomSpecies, field_amplitude: float) -> float:
    """Rabi frequency |d_ge E| / hbar [rad/s]."""
    return atom.d_ge * field_amplitude / CONST.hbar


def polarizability_full(atom: AtomSpecies, omega_L: float, field_amplitude: float) -> float:
    """Two-level polarizability including linewidth and power broadening.

    alpha = -(|d_ge|^2/hbar) * delta / (delta^2 + Gamma^2/4 + Omega^2/2),
    positive for red detuning (delta < 0).
    """
    if omega_L <= 0:
        raise PhysicsDomainError("omega_L must be positive")
    if field_amplitude < 0:
        raise PhysicsDomainError("field_amplitude must be non-negative")
    delta = omega_L - atom.omega_a
    omega_rabi = rabi_frequency(atom, field_amplitude)
    denom = delta**2 + atom.gamma**2 / 4 + omega_rabi**2 / 2
    if denom == 0:
        raise PhysicsDomainError("undefined resonance limit: delta = Gamma = Omega = 0")
    return -(atom.d_ge**2 / CONST.hbar) * delta / denom


def polarizability_approx(atom: AtomSpecies, omega_L: float) -> float:
    """Far-detuned polarizability, -|d_ge|^2 / (hbar delta)."""
    delta = omega_L - atom.omega_a
    if delta == 0:
        raise PhysicsDomainError("polarizability_approx undefined at zero detuning")
    return -atom.d_ge**2 / (CONST.hbar * delta)


@dataclass(frozen=True)
class SaturationResult:
    s: float        # saturation parameter
    p2: float       # excited-state population
    t_decay: float  # mean time before a spontaneous decay [s]; inf at zero field


def saturation_and_emission(
    atom: AtomSpecies, omega_L: float, field_amplitude: float
) -> SaturationResult:
    """Saturation parameter, excited-state population and decay time.

    s = (Omega^2/2) / (delta^2 + Gamma^2/4); p2 = (s/2)/(1+s);
    t_decay = 1/(Gamma p2).  Zero field gives s = p2 = 0 and t_decay = inf.
    """
    if field_amplitude < 0:
        raise PhysicsDomainError("field_amplitude must be non-negative")
    delta = omega_L - atom.omega_a
    omega_rabi = rabi_frequency(atom, field_amplitude)
    s = (omega_rabi**2 / 2) / (delta**2 + atom.gamma**2 / 4)
    p2 = (s / 2) / (1 + s)
    t_decay = math.inf if p2 == 0 else 1.0 / (atom.gamma * p2)
    return SaturationResult(s=s, p2=p2, t_decay=t_decay)


def effective_mass_correction(alpha: float, field_sq: float, atom: AtomSpecies) -> float:
    """Relative effective-mass correction alpha E^2 / (m c^2); diagnostic only."""
    if field_sq < 0:
        raise PhysicsDomainError("field_sq must be non-negative")
    return alpha * field_sq / (atom.mass * CONST.c**2)


def momentum_densities(E, H, D, B):
    """Abraham and Minkowski electromagnetic momentum densities.

    g_A = (E x H)/c^2 and g_M = D x B; equal in vacuum.  Inputs are
    3-vectors (or arrays of them); returns (g_A, g_M).
    """
    E = np.asarray(E, dtype=float)
    H = np.asarray(H, dtype=float)
    D = np.asarray(D, dtype=float)
    B = np.asarray(B, dtype=float)
    g_abraham = np.cross(E, H) / CONST.c**2
    g_minkowski = np.cross(D, B)
    return g_abraham, g_minkowski


def entrance_velocity_change(alpha: float, e_sq_bar: float, atom: AtomSpecies) -> float:
    """Axial velocity change from the Abraham force on entering a beam [m/s].

    Delta v = alpha mu0 Delta<S> / m = alpha e_sq_bar / (2 m c); validates the
    negligible-entrance-transient assumption (~1e-9 m/s for the reference setup).
    """
    return alpha * e_sq_bar / (2 * atom.mass * CONST.c)
