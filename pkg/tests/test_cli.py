"""CLI behavior: goldens, exit codes, config merging, library equivalence."""

import json
import random

import pytest

from composize import config as cfg
from composize.cli import main
from composize.report import render


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


CASE_FLAGS = ["--p1", "0.095", "--p2", "0.137", "--d1", "-0.022", "--d2", "-0.027"]


class TestGoldens:
    def test_bounds_case_study(self, capsys):
        code, out, _ = run(capsys, "bounds", *CASE_FLAGS)
        assert code == 0
        report = json.loads(out)
        assert report["bounds"]["lower"] == -0.0986559
        assert report["bounds"]["upper"] == 0.798216
        assert report["version"]

    def test_bounds_symmetric_margins(self, capsys):
        code, out, _ = run(capsys, "bounds", "--p1", "0.5", "--p2", "0.5", "--d1", "0", "--d2", "0")
        assert code == 0
        report = json.loads(out)
        assert report["bounds"] == {"lower": -1.0, "upper": 1.0}

    def test_recommend_strong_category(self, capsys):
        code, out, _ = run(
            capsys, "recommend", *CASE_FLAGS,
            "--alpha", "0.025", "--power", "0.80", "--measure", "rd",
            "--variance", "pooled", "--category", "strong",
        )
        assert code == 0
        rows = json.loads(out)["recommendations"]
        assert len(rows) == 1
        assert abs(rows[0]["n_total"] - 4201) <= 2

    def test_recommend_defaults_to_all_categories(self, capsys):
        code, out, _ = run(capsys, "recommend", *CASE_FLAGS)
        assert code == 0
        rows = json.loads(out)["recommendations"]
        assert [r["category"] for r in rows] == ["weak", "moderate", "strong", "no_prior"]

    def test_size_at_rho(self, capsys):
        code, out, _ = run(capsys, "size", *CASE_FLAGS, "--rho", "0.3")
        assert code == 0
        assert json.loads(out)["sample_size"]["n_total"] == 3031


class TestExitCodes:
    def test_missing_field_is_2(self, capsys):
        code, out, err = run(capsys, "bounds", "--p1", "0.095", "--d1", "-0.022", "--d2", "-0.027")
        assert code == 2
        assert out == ""
        assert json.loads(err)["code"] == "schema.missing_field"

    def test_infeasible_rho_is_3(self, capsys):
        code, _, err = run(capsys, "size", *CASE_FLAGS, "--rho", "0.95")
        assert code == 3
        assert json.loads(err)["code"] == "infeasible.correlation"

    def test_invalid_rate_is_3(self, capsys):
        code, _, err = run(capsys, "bounds", "--p1", "1.5", "--p2", "0.1", "--d1", "-0.01", "--d2", "-0.01")
        assert code == 3
        assert json.loads(err)["code"] == "rate.invalid"

    def test_usage_error_is_2(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2


class TestConfigDocument:
    def test_config_file_supplies_fields(self, capsys, tmp_path):
        doc = tmp_path / "design.yaml"
        doc.write_text("p1: 0.095\np2: 0.137\nd1: -0.022\nd2: -0.027\nrho: 0.3\n")
        code, out, _ = run(capsys, "size", "--config", str(doc))
        assert code == 0
        assert json.loads(out)["sample_size"]["n_total"] == 3031

    def test_flags_override_config(self, capsys, tmp_path):
        doc = tmp_path / "design.yaml"
        doc.write_text("p1: 0.095\np2: 0.137\nd1: -0.022\nd2: -0.027\nrho: 0.1\n")
        code, out, _ = run(capsys, "size", "--config", str(doc), "--rho", "0.3")
        assert code == 0
        report = json.loads(out)
        assert report["inputs"]["rho"] == 0.3
        assert report["sample_size"]["n_total"] == 3031

    def test_unknown_config_key_is_2(self, capsys, tmp_path):
        doc = tmp_path / "design.yaml"
        doc.write_text("p1: 0.095\np2: 0.137\nd1: -0.022\nd2: -0.027\nfrobnicate: 1\n")
        code, _, err = run(capsys, "bounds", "--config", str(doc))
        assert code == 2
        assert json.loads(err)["code"] == "schema.unknown_field"


class TestOutputModes:
    def test_out_writes_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, "bounds", *CASE_FLAGS, "--out", str(target))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["bounds"]["upper"] == 0.798216

    def test_raw_keeps_full_precision(self, capsys):
        _, rounded, _ = run(capsys, "bounds", *CASE_FLAGS)
        _, raw, _ = run(capsys, "bounds", *CASE_FLAGS, "--raw")
        assert json.loads(rounded)["bounds"]["upper"] == 0.798216
        assert json.loads(raw)["bounds"]["upper"] == 0.79821562302269

    def test_curve_csv(self, capsys, tmp_path):
        target = tmp_path / "curve.csv"
        code, out, _ = run(capsys, "curve", *CASE_FLAGS, "--n-points", "12", "--csv", str(target))
        assert code == 0
        assert len(json.loads(out)["curve"]) == 12
        lines = target.read_text().strip().splitlines()
        assert lines[0] == "rho,n_low,n_point,n_high"
        assert len(lines) == 13
        n_points = [int(line.split(",")[2]) for line in lines[1:]]
        assert n_points == sorted(n_points)


def test_cli_matches_library_byte_for_byte(capsys):
    """The size subcommand must reproduce render(handle(...)) exactly."""
    rng = random.Random(2026)
    for _ in range(10):
        payload = {
            "p1": round(rng.uniform(0.05, 0.3), 3),
            "p2": round(rng.uniform(0.05, 0.3), 3),
            "r1": round(rng.uniform(0.6, 0.9), 2),
            "r2": round(rng.uniform(0.6, 0.9), 2),
            "rho": round(rng.uniform(0.0, 0.2), 2),
            "measure": "rr",
            "variance": rng.choice(["pooled", "unpooled"]),
        }
        expected = render(cfg.handle("size", payload))
        flags = []
        for key, value in payload.items():
            flags += [f"--{key}", str(value)]
        code, out, _ = run(capsys, "size", *flags)
        assert code == 0
        assert out == expected


def test_simulate_writes_deterministic_csv(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    flags = [
        "simulate", "--p1-values", "0.1", "--p2-values", "0.15",
        "--r1-values", "0.7", "--r2-values", "0.8",
        "--rho-true-values", "0.2", "--reps", "25", "--seed", "7",
    ]
    assert main(flags + ["--out", str(a)]) == 0
    assert main(flags + ["--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0].startswith("p1,p2,effect1,effect2,measure")


def test_version_flag():
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
