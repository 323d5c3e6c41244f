"""Command line entry point.

Usage: ohmw-sim <scenario> [--config FILE] [--out PATH] [--format csv|json]
[--seed N].  Scenarios: check, balazs, phase_a, phase_b, sweep, sensitivity.
Every scenario runs with built-in reference defaults when no config is given.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace

import numpy as np

from .checks import CHECK_TABLE_VERSION, format_check_table, run_checks
from .config import SCENARIOS, RunConfig, load_config
from .core import load_species, polarizability_full
from .dynamics import ForceModel, balazs_experiment
from .errors import ConfigError, PhysicsDomainError
from .fields import (
    GaussianEnvelope,
    PlaneWave,
    SmoothstepEdgesEnvelope,
    SquareEnvelope,
    TravelingPulse,
)
from .interferometer import run_geometry_a, run_geometry_b, standard_geometry_a, standard_geometry_b
from .output import emit_results
from .phases import estimate_phases
from .sensitivity import PerturbationSpec, monte_carlo, velocity_sweep, worst_case


def _setup(cfg: RunConfig):
    atom = load_species(cfg["species"]["file"])
    laser = cfg.laser
    alpha = polarizability_full(atom, laser.omega_L, laser.peak_amplitude)
    return atom, laser, alpha


def _phase_rows(result) -> list[dict]:
    rows = []
    for arm, p in (("right", result.phase_right), ("left", result.phase_left),
                   ("delta", result.delta)):
        rows.append({
            "arm": arm,
            "kinetic_rad": p.kinetic,
            "stark_rad": p.stark,
            "ohmw_rad": p.ohmw,
            "total_rad": p.total,
        })
    return rows


def _phase_outputs(result) -> dict:
    out = {}
    for arm, p in (("right", result.phase_right), ("left", result.phase_left),
                   ("delta", result.delta)):
        out[arm] = {"kinetic_rad": p.kinetic, "stark_rad": p.stark,
                    "ohmw_rad": p.ohmw, "total_rad": p.total}
    return out


def run_check(cfg: RunConfig):
    atom, laser, _ = _setup(cfg)
    rows = run_checks(laser=laser, atom=atom, alpha_rel_tol=cfg["check"]["alpha_rel_tol"])
    print(format_check_table(rows))
    outputs = {
        "check_table_version": CHECK_TABLE_VERSION,
        "all_passed": all(r.passed for r in rows),
    }
    return outputs, [r.as_dict() for r in rows], 0 if outputs["all_passed"] else 1


def _make_envelope(kind: str, duration: float, edge: float):
    if kind == "smoothstep":
        return SmoothstepEdgesEnvelope(duration=duration, edge=edge)
    if kind == "gaussian":
        return GaussianEnvelope(sigma=edge, center=duration / 2.0)
    return SquareEnvelope(duration=duration, rise_time=edge)


def run_balazs(cfg: RunConfig):
    atom, laser, alpha = _setup(cfg)
    bal = cfg["balazs"]
    envelope = _make_envelope(bal["envelope"], bal["duration_s"], bal["edge_s"])
    carrier = PlaneWave(
        amplitude=laser.peak_amplitude,
        wavevector_dir=(1, 0, 0),
        omega_L=laser.omega_L,
        polarization=(0, 0, 1),
    )
    pulse = TravelingPulse(carrier=carrier, envelope=envelope)

    rows = []
    outputs = {}
    for model in (ForceModel.DIPOLE_PLUS_ABRAHAM, ForceModel.DIPOLE_ONLY):
        res = balazs_experiment(pulse, atom, alpha, model)
        along = float(res.displacement @ np.array([1.0, 0.0, 0.0]))
        record = {
            "force_model": model.value,
            "displacement_along_k_m": along,
            "net_impulse_along_k_kg_m_per_s": float(res.net_impulse[0]),
            "recoil_sign": res.sign.value,
            "peak_speed_m_per_s": res.peak_speed,
        }
        rows.append(record)
        outputs[model.value] = {k: v for k, v in record.items() if k != "force_model"}
    outputs["configured_force_model"] = bal["force_model"]
    return outputs, rows, 0


def run_phase_a(cfg: RunConfig):
    atom, laser, alpha = _setup(cfg)
    pa = cfg["phase_a"]
    geometry = standard_geometry_a(
        laser,
        interaction_length=pa["length_m"],
        atom_speed=pa["speed_m_per_s"],
        arm_separation=pa["arm_separation_m"],
        intensity_imbalance=pa["intensity_imbalance"],
    )
    result = run_geometry_a(geometry, atom, alpha, integrate_forces=False)
    est = estimate_phases(alpha, laser.peak_amplitude**2, pa["length_m"], pa["speed_m_per_s"])
    outputs = _phase_outputs(result)
    outputs["estimates"] = {
        "ohmw_est_rad": est["ohmw_est"],
        "stark_est_rad": est["stark_est"],
        "ratio": est["ratio"],
    }
    outputs["polarizability_si"] = alpha
    return outputs, _phase_rows(result), 0


def run_phase_b(cfg: RunConfig):
    atom, laser, alpha = _setup(cfg)
    pb = cfg["phase_b"]
    geometry = standard_geometry_b(
        laser,
        atom,
        splitting_wavelength=pb["splitting_wavelength_m"],
        n_recoils=pb["n_recoils"],
        misalignment_theta=math.radians(pb["theta_deg"]),
        impact_offset=pb["offset_waists"],
        axial_path=pb["axial_path_m"],
    )
    result = run_geometry_b(geometry, atom, alpha)
    outputs = _phase_outputs(result)
    outputs["arm_speed_m_per_s"] = geometry.arm_speed
    outputs["interaction_time_s"] = geometry.interaction_time
    outputs["polarizability_si"] = alpha
    return outputs, _phase_rows(result), 0


def run_sweep(cfg: RunConfig):
    atom, laser, alpha = _setup(cfg)
    pa = cfg["phase_a"]
    velocities = cfg["sweep"]["velocities_m_per_s"]
    geometry = standard_geometry_a(
        laser,
        interaction_length=pa["length_m"],
        arm_separation=pa["arm_separation_m"],
    )
    rows = []
    for v in velocities:
        result = run_geometry_a(replace(geometry, atom_speed=v), atom, alpha,
                                integrate_forces=False)
        p = result.phase_right
        rows.append({
            "velocity_m_per_s": v,
            "stark_rad": p.stark,
            "ohmw_rad": p.ohmw,
            "interaction_rad": p.stark + p.ohmw,
        })
    fit = velocity_sweep(geometry, atom, alpha, velocities)
    outputs = {
        "fit_dynamical_rad_m_per_s": fit["fit_a_over_v"],
        "fit_geometric_rad": fit["fit_const"],
        "fit_residual_norm_rad": fit["residual_norm"],
    }
    return outputs, rows, 0


def run_sensitivity(cfg: RunConfig, seed_override: int | None):
    atom, laser, alpha = _setup(cfg)
    sens = cfg["sensitivity"]
    seed = seed_override if seed_override is not None else sens["seed"]

    if sens["target"] == "phase_b":
        pb = cfg["phase_b"]
        geometry = standard_geometry_b(
            laser, atom,
            splitting_wavelength=pb["splitting_wavelength_m"],
            n_recoils=pb["n_recoils"],
            axial_path=pb["axial_path_m"],
        )
    else:
        pa = cfg["phase_a"]
        geometry = standard_geometry_a(
            laser,
            interaction_length=pa["length_m"],
            atom_speed=pa["speed_m_per_s"],
            arm_separation=pa["arm_separation_m"],
        )
    perturb = PerturbationSpec(
        theta_sigma=math.radians(sens["theta_tol_deg"]),
        offset_sigma=sens["offset_tol_waists"],
        intensity_imbalance_sigma=sens["intensity_tol_rel"],
        n_samples=sens["n_samples"],
        rng_seed=seed,
    )
    mc = monte_carlo(geometry, perturb, atom, alpha)
    worst = worst_case(geometry, perturb, atom, alpha)

    rows = []
    for sample in mc.samples:
        row = dict(sample.inputs)
        row["stark_residual_rad"] = sample.stark_residual
        row["ohmw_signal_rad"] = sample.ohmw_signal
        row["error"] = sample.error or ""
        rows.append(row)
    outputs = {
        "seed": seed,
        "summary": mc.summary,
        "worst_case": {
            "stark_residual_rad": worst.stark_residual,
            "ohmw_signal_rad": worst.ohmw_signal,
        },
    }
    return outputs, rows, 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ohmw-sim",
        description="Forces, trajectories and interferometric phases of a "
                    "polarizable atom in classical laser fields.",
    )
    parser.add_argument("scenario", choices=SCENARIOS)
    parser.add_argument("--config", default=None, help="TOML configuration file")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    parser.add_argument("--format", default=None, choices=("csv", "json"),
                        help="output format (default from config: json)")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the Monte Carlo seed")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.scenario != cfg.scenario:
            cfg.sections["scenario"]["name"] = args.scenario

        if args.scenario == "check":
            outputs, rows, code = run_check(cfg)
        elif args.scenario == "balazs":
            outputs, rows, code = run_balazs(cfg)
        elif args.scenario == "phase_a":
            outputs, rows, code = run_phase_a(cfg)
        elif args.scenario == "phase_b":
            outputs, rows, code = run_phase_b(cfg)
        elif args.scenario == "sweep":
            outputs, rows, code = run_sweep(cfg)
        else:
            outputs, rows, code = run_sensitivity(cfg, args.seed)

        fmt = args.format or cfg["output"]["format"]
        path = args.out if args.out is not None else (cfg["output"]["path"] or None)
        if args.scenario == "check" and path is None:
            # the human-readable table already went to stdout
            return code
        emit_results(args.scenario, cfg.echo(), outputs, rows, fmt, path, seed=args.seed)
        return code
    except (ConfigError, PhysicsDomainError) as exc:
        print(f"ohmw-sim: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
