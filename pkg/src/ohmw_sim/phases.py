"""Interferometric phase accumulation along trajectories.

The cycle-averaged, leading-order-in-beta phase integrand per unit hbar is

    (1/2) m v^2  +  (alpha/4) [Esqbar - 2 beta . (Ebar x Bbar c)]

giving the kinetic, AC-Stark and OHMW contributions.  The geometric (OHMW)
part can equivalently be evaluated as the loop integral
(1/2 hbar) closed-integral (Bbar x alpha Ebar) . dr.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .core import CONST, AtomSpecies
from .dynamics import Trajectory
from .errors import PhysicsDomainError
from .fields import cycle_averaged, phasor_terms, _grouped_by_omega


@dataclass(frozen=True)
class PhaseBreakdown:
    kinetic: float  # rad
    stark: float    # rad
    ohmw: float     # rad

    @property
    def total(self) -> float:
        return self.kinetic + self.stark + self.ohmw

    def __sub__(self, other: "PhaseBreakdown") -> "PhaseBreakdown":
        return PhaseBreakdown(
            kinetic=self.kinetic - other.kinetic,
            stark=self.stark - other.stark,
            ohmw=self.ohmw - other.ohmw,
        )


def _trajectory_averages(traj: Trajectory, model):
    """(e_sq_bar, e_cross_b_bar_c) sampled along the whole trajectory grid."""
    from .fields import _envelope_timescale

    if math.isinf(_envelope_timescale(model)):
        # static model: one vectorized query over all positions
        avg = cycle_averaged(model, traj.x, traj.t[0])
        return avg.e_sq_bar, avg.e_cross_b_bar_c
    # time-dependent envelope: evaluate pointwise at each sample time
    e_sq = np.empty(len(traj.t))
    exb_c = np.empty((len(traj.t), 3))
    for i, (ti, xi) in enumerate(zip(traj.t, traj.x)):
        avg = cycle_averaged(model, xi, ti)
        e_sq[i] = avg.e_sq_bar
        exb_c[i] = avg.e_cross_b_bar_c
    return e_sq, exb_c


def phase_along(traj: Trajectory, model, alpha: float, atom: AtomSpecies) -> PhaseBreakdown:
    """Kinetic, Stark and OHMW phase accumulated along a trajectory [rad].

    Composite-Simpson quadrature on the trajectory's own uniform grid.
    """
    if len(traj.t) < 3:
        raise PhysicsDomainError("trajectory too short for phase quadrature")

    e_sq, exb_c = _trajectory_averages(traj, model)

    v_sq = np.sum(traj.v**2, axis=1)
    beta = traj.v / CONST.c

    kinetic = 0.5 * atom.mass * v_sq
    stark = (alpha / 4.0) * e_sq
    ohmw = -(alpha / 2.0) * np.sum(beta * exb_c, axis=1)

    return PhaseBreakdown(
        kinetic=float(simpson(kinetic, x=traj.t)) / CONST.hbar,
        stark=float(simpson(stark, x=traj.t)) / CONST.hbar,
        ohmw=float(simpson(ohmw, x=traj.t)) / CONST.hbar,
    )


def _check_closed(dr: np.ndarray):
    closure = np.linalg.norm(dr.sum(axis=0))
    if closure > 1e-9:
        raise PhysicsDomainError(f"path does not close (|sum dr| = {closure:.3g} m)")


def ohmw_loop(points: np.ndarray, dr: np.ndarray, model, alpha: float, t: float = 0.0) -> float:
    """OHMW phase (1/2 hbar) closed-integral (Bbar x alpha Ebar) . dr [rad].

    The cross product of the amplitude fields is evaluated directly from the
    field phasors (Bbar x Ebar = Re[Btilde x Etilde*]), which is velocity
    independent by construction.
    """
    points = np.asarray(points, float)
    dr = np.asarray(dr, float)
    if points.shape != dr.shape:
        raise PhysicsDomainError("points and dr must have matching shapes")
    _check_closed(dr)
    avg = cycle_averaged(model, points, t)
    integrand = alpha * avg.b_bar_cross_e_bar
    return float(np.sum(integrand * dr)) / (2.0 * CONST.hbar)


def field_amplitudes(model, points, t: float = 0.0):
    """Real amplitude vectors (Ebar, Bbar) for a single traveling component.

    Defined by rotating the global carrier phase away, valid for linear
    polarization; superpositions have no position-independent amplitude
    vector and are rejected.
    """
    terms = phasor_terms(model, points, t)
    if len(terms) != 1:
        raise PhysicsDomainError("amplitude vectors are only defined for a single component")
    E, B = terms[0].E, terms[0].B
    j = np.argmax(np.abs(E), axis=-1)
    ref = np.take_along_axis(E, np.expand_dims(j, -1), axis=-1)
    phase = np.exp(-1j * np.angle(ref))
    return (E * phase).real, (B * phase).real


def estimate_phases(alpha: float, e_sq_bar: float, length: float, speed: float):
    """Closed-form magnitude estimates for the co-propagation geometry.

    ohmw_est = -alpha Esqbar L / (hbar c) is the two-arm phase difference;
    stark_est = alpha Esqbar L / (2 hbar v); ratio = |ohmw/stark| = 2 v / c.
    """
    if length <= 0 or speed <= 0:
        raise PhysicsDomainError("length and speed must be positive")
    ohmw_est = -alpha * e_sq_bar * length / (CONST.hbar * CONST.c)
    stark_est = alpha * e_sq_bar * length / (2.0 * CONST.hbar * speed)
    ratio = abs(ohmw_est / stark_est)
    return {"ohmw_est": ohmw_est, "stark_est": stark_est, "ratio": ratio}


def static_hmw_phase(points: np.ndarray, dr: np.ndarray, b_field, dipole) -> float:
    """Static HMW phase hbar^-1 closed-integral (B x d) . dr [rad].

    ``b_field`` and ``dipole`` are callables mapping (N, 3) positions to
    (N, 3) vectors (magnetic field [T] and electric dipole [C m]).
    """
    points = np.asarray(points, float)
    dr = np.asarray(dr, float)
    _check_closed(dr)
    b_vals = np.asarray(b_field(points), float)
    d_vals = np.asarray(dipole(points), float)
    integrand = np.cross(b_vals, d_vals)
    return float(np.sum(integrand * dr)) / CONST.hbar


def _lorentz_gamma_minus_one(beta_sq: float) -> float:
    """gamma - 1 without cancellation for small beta."""
    root = math.sqrt(1.0 - beta_sq)
    return beta_sq / (root * (1.0 + root))


def exact_lagrangian_phase(traj: Trajectory, model, alpha: float, atom: AtomSpecies) -> float:
    """Phase from the exact lab-frame Lagrangian, rest energy subtracted [rad].

    Integrand: (gamma alpha / 2) <(E + v x B)^2 - (E.beta)^2> + m c^2 (1 - 1/gamma),
    cycle-averaged via the field phasors.  Agrees with the leading-order
    breakdown to O(beta^2) relative.
    """
    if len(traj.t) < 3:
        raise PhysicsDomainError("trajectory too short for phase quadrature")

    n = len(traj.t)
    interaction = np.empty(n)
    for i, (ti, xi, vi) in enumerate(zip(traj.t, traj.x, traj.v)):
        groups = _grouped_by_omega(phasor_terms(model, xi, ti))
        val = 0.0
        for members in groups.values():
            E = sum(m.E for m in members)
            B = sum(m.B for m in members)
            motional = E + np.cross(vi, B)
            val += 0.5 * np.real(np.vdot(motional, motional))
            val -= 0.5 * abs(np.dot(E, vi / CONST.c)) ** 2
        interaction[i] = val

    beta_sq = np.sum(traj.v**2, axis=1) / CONST.c**2
    gamma = 1.0 / np.sqrt(1.0 - beta_sq)
    kinetic = atom.mass * CONST.c**2 * np.array([_lorentz_gamma_minus_one(b) for b in beta_sq])
    # (1 - 1/gamma) = (gamma - 1)/gamma
    kinetic = kinetic / gamma

    lagrangian = gamma * (alpha / 2.0) * interaction + kinetic
    return float(simpson(lagrangian, x=traj.t)) / CONST.hbar
