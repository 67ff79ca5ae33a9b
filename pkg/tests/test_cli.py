"""Command-line interface: config files, record serialization, subcommands."""

import csv
import io
import json
import subprocess
import sys

import pytest

from eprsim.cli import ConfigError, load_config, main, payload_to_json, rows_to_csv
from eprsim.optics import PumpPhase


def write_config(tmp_path, data):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data))
    return str(path)


def read_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestLoadConfig:
    def test_full_file_round_trip(self, tmp_path):
        path = write_config(
            tmp_path,
            {
                "source": {
                    "alpha": 60.0,
                    "r": 0.7,
                    "mode": "amp",
                    "excess_noise": 0.2,
                    "efficiency": 0.9,
                },
                "chain": {
                    "hwp_angle_deg": 21.0,
                    "qwp_angle_deg": 1.0,
                    "arm_efficiency": 0.85,
                    "extinction_angle": 0.01,
                    "electronic_noise": 3.0,
                },
                "noise": {
                    "common_phase": 0.1,
                    "differential_phase": 0.2,
                    "common_phase_rms": 0.05,
                    "differential_phase_rms": 0.02,
                },
                "detection": "homodyne",
                "mc": {"samples": 2000, "seed": 7, "batch_size": 500},
            },
        )
        config = load_config(path)
        assert config.source.alpha == 60.0
        assert config.source.pump_phase is PumpPhase.AMPLIFICATION
        assert config.source.efficiency == 0.9
        assert config.hwp_angle_deg == 21.0
        assert config.arm_efficiency == 0.85
        assert config.electronic_noise == 3.0
        assert config.differential_phase == 0.2
        assert config.detection == "homodyne"
        assert (config.mc.n_samples, config.mc.seed, config.mc.batch_size) == (
            2000,
            7,
            500,
        )

    def test_mc_section_defaults(self, tmp_path):
        config = load_config(write_config(tmp_path, {"mc": {}}))
        assert config.mc.n_samples == 1_000_000
        assert config.mc.seed == 12345

    @pytest.mark.parametrize(
        "data, match",
        [
            ({"source": {"radius": 1}}, "unknown keys in config section"),
            ({"sorce": {}}, "unknown top-level config keys"),
            ({"chain": 3}, "must be an object"),
            ({"source": {"mode": "squeezy"}}, "source.mode"),
            ({"chain": {"arm_efficiency": 2.0}}, "invalid configuration"),
        ],
    )
    def test_rejected_contents(self, tmp_path, data, match):
        with pytest.raises(ConfigError, match=match):
            load_config(write_config(tmp_path, data))

    def test_root_must_be_object(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError, match="JSON object"):
            load_config(path)

    def test_bad_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError, match="not valid JSON"):
            load_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read config file"):
            load_config(tmp_path / "absent.json")


class TestSerializationHelpers:
    def test_csv_cells(self):
        rows = [{"a": True, "b": None, "c": 0.1353352832366127, "d": "x", "e": False}]
        assert rows_to_csv(rows) == "a,b,c,d,e\ntrue,,0.135335283237,x,false\n"

    def test_json_payload(self):
        text = payload_to_json({"records": [{"ok": True}]})
        assert text.endswith("\n")
        assert "\n  " in text  # indented for humans
        assert json.loads(text) == {"records": [{"ok": True}]}


class TestDemoCommand:
    def test_stdout_verdict(self, capsys):
        assert main(["demo"]) == 0
        out = capsys.readouterr().out
        assert "overall: PASS" in out
        for name in (
            "mode_decomposition_identity",
            "collective_coefficient_patterns",
            "current_variance_prefactors",
            "witness_consistency",
        ):
            assert f"[PASS] {name}" in out

    def test_csv_out_file(self, tmp_path, capsys):
        target = tmp_path / "demo.csv"
        assert main(["demo", "--out", str(target)]) == 0
        rows = read_rows(target.read_text())
        assert len(rows) == 1
        assert rows[0]["schema_version"] == "1"
        assert rows[0]["entangled"] == "true"

    def test_json_out_file(self, tmp_path):
        target = tmp_path / "demo.json"
        assert main(["demo", "--format", "json", "--out", str(target)]) == 0
        payload = json.loads(target.read_text())
        assert set(payload) == {"records", "checks"}
        assert len(payload["records"]) == 1
        assert [c["passed"] for c in payload["checks"]] == [True] * 4

    def test_overrides_reach_the_record(self, tmp_path):
        target = tmp_path / "demo.json"
        code = main(
            ["demo", "--alpha", "50", "--r", "0.5", "--mode", "amp", "--eta", "0.9",
             "--format", "json", "--out", str(target)]
        )
        assert code == 0
        record = json.loads(target.read_text())["records"][0]
        assert record["alpha"] == 50.0
        assert record["r"] == 0.5
        assert record["mode"] == "amp"
        assert record["arm_efficiency"] == 0.9


class TestSweepCommand:
    def test_explicit_values(self, capsys):
        assert main(["sweep", "r", "--values", "0,1"]) == 0
        rows = read_rows(capsys.readouterr().out)
        assert [row["value"] for row in rows] == ["0", "1"]
        assert [row["r"] for row in rows] == ["0", "1"]
        assert [row["entangled"] for row in rows] == ["false", "true"]

    def test_inclusive_grid(self, capsys):
        assert main(["sweep", "alpha", "--grid", "50:100:3", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert [rec["value"] for rec in payload["records"]] == [50.0, 75.0, 100.0]

    @pytest.mark.parametrize(
        "argv",
        [
            ["sweep", "r"],
            ["sweep", "r", "--grid", "0:1:3", "--values", "0,1"],
            ["sweep", "r", "--grid", "0:1"],
            ["sweep", "r", "--grid", "a:b:2"],
            ["sweep", "r", "--grid", "0:1:0"],
            ["sweep", "r", "--values", "0,x,1"],
            ["sweep", "excess", "--values", "0.1"],
        ],
    )
    def test_usage_errors_exit_2(self, argv, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(argv)
        assert excinfo.value.code == 2
        capsys.readouterr()

    def test_trailing_commas_tolerated(self, capsys):
        assert main(["sweep", "r", "--values", "0,1,"]) == 0
        assert len(read_rows(capsys.readouterr().out)) == 2

    @pytest.mark.parametrize("values", ["nan", ","])
    def test_rejected_grids_report_config_error(self, values, capsys):
        assert main(["sweep", "r", "--values", values]) == 2
        assert capsys.readouterr().err.startswith("error:")


class TestValidateCommand:
    @pytest.mark.filterwarnings("ignore::eprsim.detection.LinearizationWarning")
    def test_summary_and_record_file(self, tmp_path, capsys):
        # The suite's dark-port scenario legitimately trips the dim-beam warning.
        target = tmp_path / "checks.csv"
        assert main(["validate", "--seed", "12345", "--out", str(target)]) == 0
        out = capsys.readouterr().out
        assert out.rstrip().endswith("13/13 checks passed")
        assert out.count("[PASS]") == 13
        rows = read_rows(target.read_text())
        assert len(rows) == 13
        assert {row["passed"] for row in rows} == {"true"}


class TestMcCommand:
    def test_report_rows(self, capsys):
        assert main(["mc", "--samples", "4000", "--format", "csv"]) == 0
        rows = read_rows(capsys.readouterr().out)
        assert [row["kind"] for row in rows] == [
            "current_sum",
            "current_diff",
            "photon_flux_c",
        ]
        assert {row["samples"] for row in rows} == {"4000"}
        assert {row["seed"] for row in rows} == {"12345"}  # default when unset

    def test_seed_override_with_config_mc(self, tmp_path, capsys):
        path = write_config(tmp_path, {"mc": {"samples": 2000, "seed": 7}})
        assert main(["mc", "--config", path, "--seed", "9"]) == 0
        rows = read_rows(capsys.readouterr().out)
        assert {row["samples"] for row in rows} == {"2000"}
        assert {row["seed"] for row in rows} == {"9"}


class TestErrorPaths:
    def test_missing_config_file(self, tmp_path, capsys):
        assert main(["demo", "--config", str(tmp_path / "nope.json")]) == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_invalid_override_value(self, capsys):
        assert main(["demo", "--eta", "0"]) == 2
        err = capsys.readouterr().err
        assert err.startswith("error: invalid parameter value")


def test_module_entry_point_smoke():
    result = subprocess.run(
        [sys.executable, "-m", "eprsim", "demo"],
        capture_output=True,
        timeout=120,
    )
    assert result.returncode == 0
    assert b"overall: PASS" in result.stdout
