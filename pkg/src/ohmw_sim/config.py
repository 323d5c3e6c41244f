"""Strict run-configuration parsing.

Configs are TOML with unit-suffixed key names.  Unknown keys are rejected:
a silently ignored typo in a physics parameter is worse than a hard error.
Every scenario has complete defaults, so a missing config or section runs
the reference setup from the proposal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .core import LaserSpec, ProfileKind
from .errors import ConfigError

SCENARIOS = ("check", "balazs", "phase_a", "phase_b", "sweep", "sensitivity")

# section -> key -> (type, default); None default means required-if-used
_SCHEMA = {
    "species": {"file": (str, None)},
    "laser": {
        "wavelength_m": (float, 10.6e-6),
        "power_w": (float, 50.0),
        "waist_m": (float, 100e-6),
        "profile": (str, "gaussian"),
        "profile_order": (int, 2),
    },
    "scenario": {"name": (str, "check")},
    "balazs": {
        "envelope": (str, "smoothstep"),
        "duration_s": (float, 1e-6),
        "edge_s": (float, 1e-7),
        "force_model": (str, "dipole_plus_abraham"),
    },
    "phase_a": {
        "length_m": (float, 0.05),
        "speed_m_per_s": (float, 1000.0),
        "arm_separation_m": (float, 1e-3),
        "intensity_imbalance": (float, 0.0),
    },
    "phase_b": {
        "n_recoils": (int, 400),
        "splitting_wavelength_m": (float, 670.977e-9),
        "theta_deg": (float, 0.0),
        "offset_waists": (float, 0.0),
        "axial_path_m": (float, 0.05),
    },
    "sweep": {
        "velocities_m_per_s": (list, [500.0, 700.0, 1000.0, 1400.0, 2000.0]),
    },
    "sensitivity": {
        "target": (str, "phase_b"),
        "theta_tol_deg": (float, 0.02),
        "offset_tol_waists": (float, 0.02),
        "intensity_tol_rel": (float, 0.0),
        "n_samples": (int, 1000),
        "seed": (int, 12345),
    },
    "output": {
        "format": (str, "json"),
        "path": (str, ""),
    },
    "check": {
        "alpha_rel_tol": (float, 0.30),
    },
}


@dataclass
class RunConfig:
    """Validated configuration with every section materialized to defaults."""

    sections: dict = field(default_factory=dict)
    source_path: str | None = None

    def __getitem__(self, section: str) -> dict:
        return self.sections[section]

    @property
    def scenario(self) -> str:
        return self.sections["scenario"]["name"]

    @property
    def laser(self) -> LaserSpec:
        ls = self.sections["laser"]
        kind = ls["profile"]
        order = ls["profile_order"] if kind == "super_gaussian" else 1
        return LaserSpec(
            wavelength=ls["wavelength_m"],
            power=ls["power_w"],
            waist=ls["waist_m"],
            profile=ProfileKind(kind=kind, order=order),
        )

    def echo(self) -> dict:
        """Input echo for result files; rerunning from it reproduces outputs.

        Unset optional values (None) are omitted so the echo is itself a
        valid configuration.
        """
        return {
            section: {k: v for k, v in values.items() if v is not None}
            for section, values in self.sections.items()
        }


def _coerce(section: str, key: str, expected, value):
    if expected is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"[{section}] key '{key}' must be a number")
        return float(value)
    if expected is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"[{section}] key '{key}' must be an integer")
        return value
    if expected is list:
        if not isinstance(value, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
        ):
            raise ConfigError(f"[{section}] key '{key}' must be a list of numbers")
        return [float(v) for v in value]
    if not isinstance(value, expected):
        raise ConfigError(f"[{section}] key '{key}' must be a {expected.__name__}")
    return value


def parse_config(raw: dict, source_path: str | None = None) -> RunConfig:
    """Validate a raw mapping against the schema and fill in defaults."""
    unknown_sections = set(raw) - set(_SCHEMA)
    if unknown_sections:
        raise ConfigError(f"unknown config section '{sorted(unknown_sections)[0]}'")
    if "scenario" in raw and "name" not in raw["scenario"]:
        raise ConfigError("missing key 'name' in section [scenario]")

    sections: dict = {}
    for section, schema in _SCHEMA.items():
        given = raw.get(section, {})
        if not isinstance(given, dict):
            raise ConfigError(f"config section [{section}] must be a table")
        unknown = set(given) - set(schema)
        if unknown:
            raise ConfigError(f"unknown key '{sorted(unknown)[0]}' in section [{section}]")
        values = {}
        for key, (expected, default) in schema.items():
            if key in given:
                values[key] = _coerce(section, key, expected, given[key])
            else:
                values[key] = default
        sections[section] = values

    cfg = RunConfig(sections=sections, source_path=source_path)
    _validate_physics(cfg)
    return cfg


def _validate_physics(cfg: RunConfig):
    name = cfg.scenario
    if name not in SCENARIOS:
        raise ConfigError(f"[scenario] unknown scenario name '{name}'")
    laser = cfg.sections["laser"]
    if laser["profile"] not in ("gaussian", "super_gaussian", "flat_top"):
        raise ConfigError(f"[laser] unknown profile '{laser['profile']}'")
    out = cfg.sections["output"]
    if out["format"] not in ("csv", "json"):
        raise ConfigError(f"[output] unknown format '{out['format']}'")
    bal = cfg.sections["balazs"]
    if bal["envelope"] not in ("smoothstep", "gaussian", "square"):
        raise ConfigError(f"[balazs] unknown envelope '{bal['envelope']}'")
    if bal["force_model"] not in ("dipole_only", "dipole_plus_abraham"):
        raise ConfigError(f"[balazs] unknown force_model '{bal['force_model']}'")
    sens = cfg.sections["sensitivity"]
    if sens["target"] not in ("phase_a", "phase_b"):
        raise ConfigError(f"[sensitivity] unknown target '{sens['target']}'")
    for section, key in (
        ("laser", "wavelength_m"), ("laser", "power_w"), ("laser", "waist_m"),
        ("phase_a", "length_m"), ("phase_a", "speed_m_per_s"),
        ("phase_b", "axial_path_m"), ("balazs", "duration_s"),
    ):
        value = cfg.sections[section][key]
        if not math.isfinite(value) or value <= 0:
            raise ConfigError(f"[{section}] key '{key}' must be positive and finite")


def load_config(path: str | None) -> RunConfig:
    """Load and validate a TOML config file; None gives the full defaults."""
    if path is None:
        return parse_config({})
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return parse_config(raw, source_path=path)
