"""Classical electromagnetic field configurations.

Every configuration is a superposition of traveling components, each written
as a complex phasor E(x, t) = Re[Etilde(x, t) exp(-i omega t)] with a slowly
varying (retarded-time) envelope.  Cycle-averaged quadratic quantities and
their spatial/temporal derivatives are then analytic:

    Esqbar          = Etilde . Etilde*          (amplitude squared, 2<E.E>)
    <S>             = Re[Etilde x Btilde*] / (2 mu0)
    Bbar x Ebar     = -Re[Etilde x Btilde*]

Components at different carrier frequencies add incoherently (their cross
terms vanish under cycle averaging).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.constants import pi
from scipy.integrate import quad

from .core import CONST, ProfileKind
from .errors import PhysicsDomainError

_UNIT_TOL = 1e-12


def _unit(vec, name: str) -> np.ndarray:
    vec = np.asarray(vec, dtype=float)
    if vec.shape != (3,):
        raise PhysicsDomainError(f"{name} must be a 3-vector")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > _UNIT_TOL:
        raise PhysicsDomainError(f"{name} must be unit-norm (|v| = {norm!r})")
    return vec


# ---------------------------------------------------------------------------
# transverse beam profiles


def beam_amplitude_profile(profile: ProfileKind, r_perp, waist: float):
    """Normalized amplitude profile in [0, 1] at transverse radius r_perp.

    gaussian: exp(-r^2/w^2); super_gaussian(p): exp(-(r^2/w^2)^p);
    flat_top: 1 inside the waist with a cosine roll-off over 0.1 w.
    """
    if waist <= 0:
        raise PhysicsDomainError("waist must be positive")
    r = np.asarray(r_perp, dtype=float)
    if np.any(r < 0):
        raise PhysicsDomainError("r_perp must be non-negative")
    u = (r / waist) ** 2
    if profile.kind == "gaussian":
        return np.exp(-u)
    if profile.kind == "super_gaussian":
        return np.exp(-(u**profile.order))
    # flat_top
    edge = 0.1 * waist
    ramp = 0.5 * (1.0 + np.cos(pi * np.clip((r - waist) / edge, 0.0, 1.0)))
    return np.where(r <= waist, 1.0, ramp)


def beam_profile_derivative(profile: ProfileKind, r_perp, waist: float):
    """d(profile)/dr at transverse radius r_perp."""
    r = np.asarray(r_perp, dtype=float)
    u = (r / waist) ** 2
    if profile.kind == "gaussian":
        return -2.0 * r / waist**2 * np.exp(-u)
    if profile.kind == "super_gaussian":
        p = profile.order
        return -2.0 * p * r / waist**2 * u ** (p - 1) * np.exp(-(u**p))
    edge = 0.1 * waist
    inside_rolloff = (r > waist) & (r < waist + edge)
    deriv = np.where(
        inside_rolloff,
        -0.5 * pi / edge * np.sin(pi * np.clip((r - waist) / edge, 0.0, 1.0)),
        0.0,
    )
    return deriv


@lru_cache(maxsize=None)
def profile_power_factor(profile: ProfileKind) -> float:
    """Ratio of the profile's intensity area integral to the Gaussian one.

    P = I0 * (pi w^2 / 2) * factor, so factor = 1 for a Gaussian.
    """
    if profile.kind == "gaussian":
        return 1.0
    if profile.kind == "super_gaussian":
        p = profile.order
        return 2.0 * math.gamma(1.0 + 1.0 / p) * 2.0 ** (-1.0 / p)
    integral, _ = quad(
        lambda rho: beam_amplitude_profile(profile, rho, 1.0) ** 2 * 2.0 * rho, 0.0, 1.2
    )
    return 2.0 * integral


# ---------------------------------------------------------------------------
# envelopes (functions of retarded time u = t - x.khat/c)


class Envelope:
    """Base class; values lie in [0, 1] and decay at the window edges."""

    def value(self, u):
        raise NotImplementedError

    def derivative(self, u):
        raise NotImplementedError

    @property
    def timescale(self) -> float:
        """Shortest time over which the envelope varies appreciably."""
        raise NotImplementedError

    def window(self) -> tuple[float, float]:
        """Retarded-time interval outside which the envelope is negligible."""
        raise NotImplementedError


@dataclass(frozen=True)
class SquareEnvelope(Envelope):
    """Flat top of total length ``duration`` with sin^2 ramps of ``rise_time``."""

    duration: float
    rise_time: float

    def __post_init__(self):
        if self.duration <= 0 or self.rise_time < 0:
            raise PhysicsDomainError("duration must be > 0 and rise_time >= 0")
        if 2 * self.rise_time > self.duration:
            raise PhysicsDomainError("rise_time exceeds half the duration")
        if self.rise_time == 0:
            warnings.warn("square envelope with zero rise time: forces are discontinuous")

    def value(self, u):
        u = np.asarray(u, dtype=float)
        if self.rise_time == 0:
            return np.where((u >= 0) & (u <= self.duration), 1.0, 0.0)
        up = np.sin(0.5 * pi * np.clip(u / self.rise_time, 0.0, 1.0)) ** 2
        down = np.sin(0.5 * pi * np.clip((self.duration - u) / self.rise_time, 0.0, 1.0)) ** 2
        return np.where((u >= 0) & (u <= self.duration), np.minimum(up, down), 0.0)

    def derivative(self, u):
        u = np.asarray(u, dtype=float)
        if self.rise_time == 0:
            return np.zeros_like(u)
        tau = self.rise_time
        rising = (u > 0) & (u < tau)
        falling = (u > self.duration - tau) & (u < self.duration)
        dup = 0.5 * pi / tau * np.sin(pi * u / tau)
        ddown = -0.5 * pi / tau * np.sin(pi * (self.duration - u) / tau)
        return np.where(rising, dup, 0.0) + np.where(falling, ddown, 0.0)

    @property
    def timescale(self) -> float:
        return self.rise_time if self.rise_time > 0 else self.duration

    def window(self):
        return (0.0, self.duration)


@dataclass(frozen=True)
class GaussianEnvelope(Envelope):
    """exp(-(u - center)^2 / (2 sigma^2))."""

    sigma: float
    center: float = 0.0

    def __post_init__(self):
        if self.sigma <= 0:
            raise PhysicsDomainError("sigma must be positive")

    def value(self, u):
        u = np.asarray(u, dtype=float)
        return np.exp(-((u - self.center) ** 2) / (2 * self.sigma**2))

    def derivative(self, u):
        u = np.asarray(u, dtype=float)
        return -(u - self.center) / self.sigma**2 * self.value(u)

    @property
    def timescale(self) -> float:
        return self.sigma

    def window(self):
        return (self.center - 8 * self.sigma, self.center + 8 * self.sigma)


def _smoothstep(t):
    t = np.clip(t, 0.0, 1.0)
    return t**3 * (10.0 + t * (-15.0 + 6.0 * t))


def _smoothstep_deriv(t):
    tc = np.clip(t, 0.0, 1.0)
    inside = (t > 0) & (t < 1)
    return np.where(inside, 30.0 * tc**2 * (1.0 - tc) ** 2, 0.0)


@dataclass(frozen=True)
class SmoothstepEdgesEnvelope(Envelope):
    """Unit plateau with C2 quintic-smoothstep edges of width ``edge``."""

    duration: float
    edge: float

    def __post_init__(self):
        if self.duration <= 0 or self.edge <= 0:
            raise PhysicsDomainError("duration and edge must be positive")
        if 2 * self.edge > self.duration:
            raise PhysicsDomainError("edge exceeds half the duration")

    def value(self, u):
        u = np.asarray(u, dtype=float)
        up = _smoothstep(u / self.edge)
        down = _smoothstep((self.duration - u) / self.edge)
        return np.where((u >= 0) & (u <= self.duration), np.minimum(up, down), 0.0)

    def derivative(self, u):
        u = np.asarray(u, dtype=float)
        rising = (u > 0) & (u < self.edge)
        falling = (u > self.duration - self.edge) & (u < self.duration)
        dup = _smoothstep_deriv(u / self.edge) / self.edge
        ddown = -_smoothstep_deriv((self.duration - u) / self.edge) / self.edge
        return np.where(rising, dup, 0.0) + np.where(falling, ddown, 0.0)

    @property
    def timescale(self) -> float:
        return self.edge

    def window(self):
        return (0.0, self.duration)


# ---------------------------------------------------------------------------
# field model variants


@dataclass(frozen=True)
class PlaneWave:
    """Monochromatic plane wave E = amplitude * pol * cos(k.x - omega t)."""

    amplitude: float        # N/C
    wavevector_dir: tuple   # unit 3-vector
    omega_L: float          # rad/s
    polarization: tuple     # unit 3-vector, transverse

    def __post_init__(self):
        k = _unit(self.wavevector_dir, "wavevector_dir")
        p = _unit(self.polarization, "polarization")
        object.__setattr__(self, "wavevector_dir", tuple(k))
        object.__setattr__(self, "polarization", tuple(p))
        if self.amplitude < 0:
            raise PhysicsDomainError("amplitude must be non-negative")
        if self.omega_L <= 0:
            raise PhysicsDomainError("omega_L must be positive")
        if abs(float(np.dot(k, p))) > _UNIT_TOL:
            raise PhysicsDomainError("polarization must be transverse to wavevector_dir")


@dataclass(frozen=True)
class TravelingPulse:
    """Plane-wave carrier modulated by an envelope of retarded time."""

    carrier: PlaneWave
    envelope: Envelope

    def __post_init__(self):
        if self.envelope.timescale <= 100.0 / self.carrier.omega_L:
            warnings.warn(
                "envelope varies on the optical-cycle scale; "
                "cycle averaging is not meaningful"
            )


@dataclass(frozen=True)
class BeamProfile:
    """Collimated beam: transverse profile, uniform along the axis."""

    axis: tuple             # unit 3-vector, propagation direction
    axis_origin: tuple      # m
    waist: float            # m
    peak_amplitude: float   # N/C
    profile: ProfileKind
    omega_L: float          # rad/s
    polarization: tuple     # unit 3-vector, transverse

    def __post_init__(self):
        a = _unit(self.axis, "axis")
        p = _unit(self.polarization, "polarization")
        object.__setattr__(self, "axis", tuple(a))
        object.__setattr__(self, "axis_origin", tuple(np.asarray(self.axis_origin, float)))
        object.__setattr__(self, "polarization", tuple(p))
        if self.waist <= 0:
            raise PhysicsDomainError("waist must be positive")
        if self.peak_amplitude < 0:
            raise PhysicsDomainError("peak_amplitude must be non-negative")
        if self.omega_L <= 0:
            raise PhysicsDomainError("omega_L must be positive")
        if abs(float(np.dot(a, p))) > _UNIT_TOL:
            raise PhysicsDomainError("polarization must be transverse to axis")


@dataclass(frozen=True)
class CounterpropagatingPair:
    """Two components with antiparallel propagation directions."""

    first: object
    second: object

    def __post_init__(self):
        k1 = propagation_direction(self.first)
        k2 = propagation_direction(self.second)
        if np.linalg.norm(np.asarray(k1) + np.asarray(k2)) > _UNIT_TOL:
            raise PhysicsDomainError("pair components must counterpropagate")


@dataclass(frozen=True)
class Superposition:
    """Linear superposition of field models."""

    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise PhysicsDomainError("superposition needs at least one component")


def propagation_direction(model):
    """Unit propagation direction, if the model has a unique one."""
    if isinstance(model, PlaneWave):
        return np.asarray(model.wavevector_dir)
    if isinstance(model, TravelingPulse):
        return np.asarray(model.carrier.wavevector_dir)
    if isinstance(model, BeamProfile):
        return np.asarray(model.axis)
    raise PhysicsDomainError(f"{type(model).__name__} has no unique propagation direction")


def gaussian_beam_from_laser(laser, axis, axis_origin=(0.0, 0.0, 0.0), polarization=None):
    """BeamProfile with the laser's peak amplitude, profile and waist."""
    axis = _unit(np.asarray(axis, float) / np.linalg.norm(axis), "axis")
    if polarization is None:
        trial = np.array([0.0, 0.0, 1.0])
        if abs(np.dot(trial, axis)) > 0.9:
            trial = np.array([0.0, 1.0, 0.0])
        polarization = trial - np.dot(trial, axis) * axis
        polarization /= np.linalg.norm(polarization)
    return BeamProfile(
        axis=tuple(axis),
        axis_origin=tuple(np.asarray(axis_origin, float)),
        waist=laser.waist,
        peak_amplitude=laser.peak_amplitude,
        profile=laser.profile,
        omega_L=laser.omega_L,
        polarization=tuple(polarization),
    )


# ---------------------------------------------------------------------------
# phasor decomposition


@dataclass
class PhasorTerm:
    """One traveling component's complex field data at query points.

    E, B, Et, Bt have shape (..., 3); jac_E has shape (..., 3, 3) with
    jac_E[..., i, j] = dE_i/dx_j.  Et, Bt are partial time derivatives
    (envelope only; the carrier's exp(-i omega t) is kept separate).
    """

    omega: float
    E: np.ndarray
    B: np.ndarray
    Et: np.ndarray
    Bt: np.ndarray
    jac_E: np.ndarray


def _plane_like_term(amplitude, k_dir, omega, pol, envelope, x, t) -> PhasorTerm:
    x = np.asarray(x, dtype=float)
    k_dir = np.asarray(k_dir, dtype=float)
    pol = np.asarray(pol, dtype=float)
    k_vec = (omega / CONST.c) * k_dir
    phase = np.exp(1j * np.asarray(x @ k_vec))[..., np.newaxis]
    b_dir = np.cross(k_dir, pol)

    if envelope is None:
        env = np.ones(x.shape[:-1] + (1,))
        denv = np.zeros_like(env)
    else:
        u = np.asarray(t - np.asarray(x @ k_dir) / CONST.c)
        env = np.asarray(envelope.value(u))[..., np.newaxis]
        denv = np.asarray(envelope.derivative(u))[..., np.newaxis]

    E0 = amplitude * pol * phase        # carrier phasor, no envelope
    B0 = (amplitude / CONST.c) * b_dir * phase
    E = env * E0
    B = env * B0
    Et = denv * E0
    Bt = denv * B0
    # dE_i/dx_j = i k_j E_i - (khat_j / c) * Et_i
    jac = 1j * E[..., :, np.newaxis] * k_vec - Et[..., :, np.newaxis] * (k_dir / CONST.c)
    return PhasorTerm(omega=omega, E=E, B=B, Et=Et, Bt=Bt, jac_E=jac)


def _beam_term(beam: BeamProfile, x, t) -> PhasorTerm:
    x = np.asarray(x, dtype=float)
    axis = np.asarray(beam.axis)
    pol = np.asarray(beam.polarization)
    rel = x - np.asarray(beam.axis_origin)
    s = np.asarray(rel @ axis)
    r_vec = rel - s[..., np.newaxis] * axis
    r = np.linalg.norm(r_vec, axis=-1)

    prof = beam_amplitude_profile(beam.profile, r, beam.waist)
    dprof = beam_profile_derivative(beam.profile, r, beam.waist)
    k = beam.omega_L / CONST.c
    phase = np.exp(1j * k * s)

    with np.errstate(invalid="ignore", divide="ignore"):
        r_hat = np.where(r[..., np.newaxis] > 0, r_vec / np.where(r, r, 1.0)[..., np.newaxis], 0.0)

    amp = beam.peak_amplitude * prof
    E = (amp * phase)[..., np.newaxis] * pol
    b_dir = np.cross(axis, pol)
    B = (amp * phase / CONST.c)[..., np.newaxis] * b_dir
    # dE_i/dx_j = pol_i phase (E0 prof'(r) rhat_j + i k axis_j E0 prof)
    grad_amp = (beam.peak_amplitude * dprof * phase)[..., np.newaxis] * r_hat
    grad_amp = grad_amp + (1j * k * amp * phase)[..., np.newaxis] * axis
    jac = pol[:, np.newaxis] * grad_amp[..., np.newaxis, :]
    zeros = np.zeros_like(E)
    return PhasorTerm(omega=beam.omega_L, E=E, B=B, Et=zeros, Bt=zeros, jac_E=jac)


def phasor_terms(model, x, t) -> list[PhasorTerm]:
    """Complex phasor data for every traveling component of ``model``."""
    if isinstance(model, PlaneWave):
        return [
            _plane_like_term(
                model.amplitude, model.wavevector_dir, model.omega_L,
                model.polarization, None, x, t,
            )
        ]
    if isinstance(model, TravelingPulse):
        cw = model.carrier
        return [
            _plane_like_term(
                cw.amplitude, cw.wavevector_dir, cw.omega_L,
                cw.polarization, model.envelope, x, t,
            )
        ]
    if isinstance(model, BeamProfile):
        return [_beam_term(model, x, t)]
    if isinstance(model, CounterpropagatingPair):
        return phasor_terms(model.first, x, t) + phasor_terms(model.second, x, t)
    if isinstance(model, Superposition):
        terms = []
        for component in model.components:
            terms.extend(phasor_terms(component, x, t))
        return terms
    raise PhysicsDomainError(f"unknown field model {type(model).__name__}")


def _grouped_by_omega(terms):
    groups: dict[float, list[PhasorTerm]] = {}
    for term in terms:
        for key in groups:
            if abs(term.omega - key) <= 1e-9 * key:
                groups[key].append(term)
                break
        else:
            groups[term.omega] = [term]
    return groups


# ---------------------------------------------------------------------------
# public queries


@dataclass(frozen=True)
class CycleAveraged:
    """Cycle-averaged quadratic field quantities at the query points."""

    e_sq_bar: np.ndarray            # amplitude squared, (N/C)^2
    poynting_bar: np.ndarray        # <E x H>, W/m^2
    b_bar_cross_e_bar: np.ndarray   # amplitude cross product Bbar x Ebar, T N/C
    grad_e_sq_bar: np.ndarray       # gradient of e_sq_bar, (N/C)^2 / m
    dpoynting_dt: np.ndarray        # envelope-scale d<S>/dt, W/m^2/s

    @property
    def e_cross_b_bar_c(self) -> np.ndarray:
        """c * (Ebar x Bbar), the vector entering the OHMW integrand [(N/C)^2]."""
        return -CONST.c * self.b_bar_cross_e_bar


def instantaneous_fields(model, x, t: float):
    """Instantaneous (E [N/C], B [T]) at position(s) x and scalar time t."""
    terms = phasor_terms(model, x, t)
    E = 0.0
    B = 0.0
    for term in terms:
        carrier = np.exp(-1j * term.omega * t)
        E = E + (term.E * carrier).real
        B = B + (term.B * carrier).real
    return E, B


def cycle_averaged(model, x, t_env=0.0) -> CycleAveraged:
    """Analytic cycle averages of the quadratic field quantities.

    ``x`` may be a single 3-vector or an array of shape (..., 3); all outputs
    broadcast accordingly.
    """
    terms = phasor_terms(model, x, t_env)
    groups = _grouped_by_omega(terms)

    shape = np.asarray(x, dtype=float).shape
    e_sq = np.zeros(shape[:-1])
    poynting = np.zeros(shape)
    b_x_e = np.zeros(shape)
    grad_e_sq = np.zeros(shape)
    ds_dt = np.zeros(shape)

    for members in groups.values():
        E = sum(m.E for m in members)
        B = sum(m.B for m in members)
        Et = sum(m.Et for m in members)
        Bt = sum(m.Bt for m in members)
        jac = sum(m.jac_E for m in members)

        e_sq = e_sq + np.sum(E * E.conj(), axis=-1).real
        exb = np.cross(E, B.conj())
        poynting = poynting + exb.real / (2 * CONST.mu0)
        b_x_e = b_x_e - exb.real
        grad_e_sq = grad_e_sq + 2.0 * np.einsum("...ij,...i->...j", jac, E.conj()).real
        ds_dt = ds_dt + (np.cross(Et, B.conj()) + np.cross(E, Bt.conj())).real / (2 * CONST.mu0)

    return CycleAveraged(
        e_sq_bar=e_sq,
        poynting_bar=poynting,
        b_bar_cross_e_bar=b_x_e,
        grad_e_sq_bar=grad_e_sq,
        dpoynting_dt=ds_dt,
    )


def _min_transverse_scale(model):
    if isinstance(model, BeamProfile):
        return model.waist
    if isinstance(model, CounterpropagatingPair):
        return min(_min_transverse_scale(model.first), _min_transverse_scale(model.second))
    if isinstance(model, Superposition):
        return min(_min_transverse_scale(c) for c in model.components)
    if isinstance(model, (PlaneWave, TravelingPulse)):
        omega = model.omega_L if isinstance(model, PlaneWave) else model.carrier.omega_L
        return 2 * pi * CONST.c / omega
    raise PhysicsDomainError(f"unknown field model {type(model).__name__}")


def cycle_averaged_numeric(model, x, t_env=0.0, samples_per_cycle=64) -> CycleAveraged:
    """Quadrature fallback for cycle averages; independent of the phasor path.

    Simpson over one optical period of the instantaneous fields; the spatial
    gradient uses central differences with step = transverse scale / 1e4.
    """
    x = np.asarray(x, dtype=float)
    omega = min(term.omega for term in phasor_terms(model, x, t_env))
    period = 2 * pi / omega
    n = max(int(samples_per_cycle), 64)
    if n % 2:
        n += 1
    times = t_env + np.linspace(0.0, period, n + 1)

    from scipy.integrate import simpson

    def averages(xq):
        # envelope held at t_env: the average is over the carrier only
        terms = phasor_terms(model, xq, t_env)
        e_dot_e = []
        e_x_b = []
        for tq in times:
            E = sum((term.E * np.exp(-1j * term.omega * tq)).real for term in terms)
            B = sum((term.B * np.exp(-1j * term.omega * tq)).real for term in terms)
            e_dot_e.append(np.sum(E * E, axis=-1))
            e_x_b.append(np.cross(E, B))
        e_sq = 2.0 * simpson(np.array(e_dot_e), x=times, axis=0) / period
        exb_mean = simpson(np.array(e_x_b), x=times, axis=0) / period
        return e_sq, exb_mean

    e_sq, exb_mean = averages(x)
    poynting = exb_mean / CONST.mu0
    b_x_e = -2.0 * exb_mean

    h = _min_transverse_scale(model) / 1e4
    grad = np.zeros(x.shape)
    for j in range(3):
        step = np.zeros(3)
        step[j] = h
        ep, _ = averages(x + step)
        em, _ = averages(x - step)
        grad[..., j] = (ep - em) / (2 * h)

    tau = _envelope_timescale(model)
    if math.isinf(tau):
        ds_dt = np.zeros(x.shape)
    else:
        dt = tau / 1e4
        sp = cycle_averaged(model, x, t_env + dt).poynting_bar
        sm = cycle_averaged(model, x, t_env - dt).poynting_bar
        ds_dt = (sp - sm) / (2 * dt)

    return CycleAveraged(
        e_sq_bar=e_sq,
        poynting_bar=poynting,
        b_bar_cross_e_bar=b_x_e,
        grad_e_sq_bar=grad,
        dpoynting_dt=ds_dt,
    )


def _envelope_timescale(model) -> float:
    """Shortest envelope timescale present in the model; inf when static."""
    if isinstance(model, TravelingPulse):
        return model.envelope.timescale
    if isinstance(model, CounterpropagatingPair):
        return min(_envelope_timescale(model.first), _envelope_timescale(model.second))
    if isinstance(model, Superposition):
        return min(_envelope_timescale(c) for c in model.components)
    return math.inf
