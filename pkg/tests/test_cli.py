import csv
import io
import json
import math

import pytest

from ohmw_sim.checks import CHECK_TABLE_VERSION, format_check_table, run_checks
from ohmw_sim.cli import main
from ohmw_sim.output import csv_table, dumps_json, format_float, json_document


# ---------------------------------------------------------------------------
# serialization


def test_format_float_round_trips_exactly():
    for x in (1.0 / 3.0, 5.0e-39, -1.892779e-2, 1e308, 123456.789):
        assert float(format_float(x)) == x
    assert format_float(math.nan) == "null"
    assert format_float(math.inf) == "null"


def test_dumps_json_is_valid_and_exact():
    doc = json_document("phase_a", {"a": {"x_m": 1.0 / 3.0}}, {"phi_rad": -5e-39})
    parsed = json.loads(dumps_json(doc))
    assert parsed["schema_version"] == 1
    assert parsed["inputs"]["a"]["x_m"] == 1.0 / 3.0
    assert parsed["outputs"]["phi_rad"] == -5e-39


def test_csv_table_rfc4180():
    rows = [
        {"name": 'needs, "quoting"', "value_rad": 1.0 / 7.0},
        {"name": "plain", "value_rad": 2.0},
    ]
    text = csv_table(rows)
    assert "\r\n" in text
    parsed = list(csv.reader(io.StringIO(text)))
    assert parsed[0] == ["name", "value_rad"]
    assert parsed[1][0] == 'needs, "quoting"'
    assert float(parsed[1][1]) == 1.0 / 7.0


# ---------------------------------------------------------------------------
# check table


def test_check_table_all_pass(laser, atom):
    rows = run_checks(laser=laser, atom=atom)
    assert all(r.passed for r in rows)
    text = format_check_table(rows)
    assert f"v{CHECK_TABLE_VERSION}" in text
    assert "overall: PASS" in text
    assert text.count("PASS") == len(rows) + 1


def test_check_table_detects_failure(laser, atom):
    rows = run_checks(laser=laser, atom=atom, alpha_rel_tol=1e-6)
    names = {r.name: r for r in rows}
    assert not names["polarizability_si"].passed
    assert "FAIL" in format_check_table(rows)


# ---------------------------------------------------------------------------
# CLI end to end


def test_cli_check_exits_zero(capsys):
    assert main(["check"]) == 0
    out = capsys.readouterr().out
    assert "overall: PASS" in out


def test_cli_rejects_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("[laser]\nwavelength_nm = 670\n")
    assert main(["phase_a", "--config", str(cfg)]) == 2
    assert "wavelength_nm" in capsys.readouterr().err


def test_cli_phase_a_json(tmp_path):
    out = tmp_path / "res.json"
    assert main(["phase_a", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["schema_version"] == 1
    assert doc["scenario"] == "phase_a"
    delta = doc["outputs"]["delta"]
    assert -26e-3 < delta["ohmw_rad"] < -14e-3
    assert abs(delta["stark_rad"]) < 1e-6
    assert doc["inputs"]["laser"]["power_w"] == 50


def test_cli_phase_b_csv_with_sidecar(tmp_path):
    out = tmp_path / "res.csv"
    assert main(["phase_b", "--format", "csv", "--out", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert [r["arm"] for r in rows] == ["right", "left", "delta"]
    summary = json.loads((tmp_path / "res.csv.summary.json").read_text())
    assert summary["outputs"]["arm_speed_m_per_s"] == pytest.approx(33.9, rel=0.01)


def test_cli_sweep(tmp_path):
    out = tmp_path / "sweep.json"
    cfg = tmp_path / "cfg.toml"
    cfg.write_text("[sweep]\nvelocities_m_per_s = [600.0, 900.0, 1300.0]\n")
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["outputs"]["rows"]) == 3
    assert doc["outputs"]["fit_geometric_rad"] < 0


def test_cli_sensitivity_seed_reproducible(tmp_path):
    cfg = tmp_path / "cfg.toml"
    cfg.write_text(
        '[laser]\nprofile = "super_gaussian"\nprofile_order = 2\n'
        "\n[sensitivity]\nn_samples = 8\n"
    )
    docs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert main(["sensitivity", "--config", str(cfg), "--seed", "99",
                     "--out", str(out)]) == 0
        docs.append(json.loads(out.read_text()))
    assert docs[0]["outputs"] == docs[1]["outputs"]
    assert docs[0]["seed"] == 99
    out2 = tmp_path / "c.json"
    assert main(["sensitivity", "--config", str(cfg), "--seed", "100",
                 "--out", str(out2)]) == 0
    other = json.loads(out2.read_text())
    assert other["outputs"]["summary"] != docs[0]["outputs"]["summary"]


def test_cli_balazs_json(tmp_path):
    cfg = tmp_path / "cfg.toml"
    # gaussian envelope keeps the runtime short at the default step budget
    cfg.write_text('[balazs]\nenvelope = "gaussian"\nduration_s = 2e-7\nedge_s = 2e-8\n')
    out = tmp_path / "bal.json"
    assert main(["balazs", "--config", str(cfg), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    both = doc["outputs"]
    d1 = both["dipole_plus_abraham"]["displacement_along_k_m"]
    d2 = both["dipole_only"]["displacement_along_k_m"]
    assert d1 == pytest.approx(-d2, rel=1e-6)
    assert both["dipole_plus_abraham"]["recoil_sign"] == "with_light"
