import json

import numpy as np
import pytest

from satnls.cli import bundle_from_sections, emit_config, main, parse_config
from satnls.errors import BadValue, MissingKey, UnknownKey, ValidationError
from satnls.grid import field_from_function, make_grid
from satnls.io import read_report_json, read_series_csv, write_field_csv

GOOD_CONFIG = """\
[grid]
dim = 1
half_width = 3.0
points = 64

[model]
mu = 1.0
u0.kind = bump
u0.amplitude = 0.3
u0.width = 1.0

[solver]
scheme = strang
dt = 1e-2
t_end = 0.1

[output]
series_path = out_series.csv
report_path = out_report.json
"""


def write_config(tmp_path, text=GOOD_CONFIG, name="run.ini"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestParseConfig:
    def test_valid_bundle(self, tmp_path):
        b = parse_config(write_config(tmp_path))
        assert b.grid.dim == 1 and b.grid.points_per_dim == 64
        assert b.model.mu == 1.0
        assert b.config.scheme == "strang"
        assert b.output["series_path"] == "out_series.csv"

    def test_missing_key(self, tmp_path):
        text = GOOD_CONFIG.replace("dt = 1e-2\n", "")
        with pytest.raises(MissingKey, match="solver.dt"):
            parse_config(write_config(tmp_path, text))

    def test_unknown_key(self, tmp_path):
        text = GOOD_CONFIG + "\n[solver]\nwarp_factor = 9\n"
        # configparser merges duplicate sections; rewrite cleanly instead
        text = GOOD_CONFIG.replace("scheme = strang", "scheme = strang\nwarp_factor = 9")
        with pytest.raises(UnknownKey, match="warp_factor"):
            parse_config(write_config(tmp_path, text))

    def test_bad_value(self, tmp_path):
        text = GOOD_CONFIG.replace("dt = 1e-2", "dt = fast")
        with pytest.raises(BadValue, match="solver.dt"):
            parse_config(write_config(tmp_path, text))

    def test_negative_mu_rejected(self, tmp_path):
        text = GOOD_CONFIG.replace("mu = 1.0", "mu = -1")
        with pytest.raises(ValidationError):
            parse_config(write_config(tmp_path, text))

    def test_round_trip(self, tmp_path):
        b = parse_config(write_config(tmp_path))
        p2 = tmp_path / "emitted.ini"
        p2.write_text(emit_config(b))
        b2 = parse_config(p2)
        assert b2.sections == b.sections
        assert b2.grid == b.grid
        assert b2.config == b.config
        assert np.array_equal(b2.u0.values, b.u0.values)

    def test_potential_kinds(self, tmp_path):
        text = GOOD_CONFIG.replace(
            "mu = 1.0",
            "mu = 1.0\npotential.kind = well_plus_inverse_power\n"
            "potential.well_depth = -2.0\npotential.inv_strength = 0.5",
        )
        b = parse_config(write_config(tmp_path, text))
        v = b.model.potential_samples()
        assert v.min() < 0 and v.max() > 0


class TestMain:
    def test_run_writes_artifacts(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SATNLS_OUTPUT_DIR", str(tmp_path))
        cfg = write_config(tmp_path)
        assert main(["run", "--config", str(cfg)]) == 0
        series = read_series_csv(tmp_path / "out_series.csv")
        assert len(series) == 11
        report = read_report_json(tmp_path / "out_report.json")
        assert report["a_priori_ok"] is True

    def test_run_missing_key_exit_2(self, tmp_path):
        text = GOOD_CONFIG.replace("dt = 1e-2\n", "")
        cfg = write_config(tmp_path, text)
        assert main(["run", "--config", str(cfg)]) == 2

    def test_bad_usage_exit_2(self, capsys):
        assert main(["frobnicate"]) == 2
        capsys.readouterr()

    def test_scenario_pass(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("SATNLS_OUTPUT_DIR", str(tmp_path / "art"))
        assert main(["scenario", "extinction_1d"]) == 0
        out = capsys.readouterr().out
        assert "extinction_1d: pass" in out
        assert (tmp_path / "art" / "extinction_1d_report.json").is_file()

    def test_scenario_unknown_exit_3(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("SATNLS_OUTPUT_DIR", str(tmp_path))
        assert main(["scenario", "warp_drive"]) == 3
        capsys.readouterr()

    def test_norms_closed_forms(self, tmp_path, capsys):
        g = make_grid(1, 4097 / 1024, 4096)
        f = field_from_function(g, lambda x: ((x > 0) & (x < 1)).astype(float))
        p = tmp_path / "f.csv"
        write_field_csv(p, f)
        out_json = tmp_path / "norms.json"
        code = main(
            [
                "norms",
                "--input", str(p),
                "--n-list", "1,2,3,100",
                "--half-width", repr(4097 / 1024),
                "--output", str(out_json),
            ]
        )
        assert code == 0
        table = json.loads(out_json.read_text())
        values = {row["n"]: row["yn_norm"] for row in table}
        assert values[1] == pytest.approx(2.0, abs=1e-6)
        assert values[2] == pytest.approx(2.0, abs=1e-6)
        assert values[3] == pytest.approx(12**0.25, abs=1e-6)
        assert values[100] == pytest.approx(400 ** (1 / 101), abs=1e-6)

    def test_fit_and_report(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("SATNLS_OUTPUT_DIR", str(tmp_path))
        cfg = write_config(
            tmp_path,
            GOOD_CONFIG.replace("t_end = 0.1", "t_end = 0.3").replace(
                "dt = 1e-2", "dt = 5e-3"
            ),
        )
        assert main(["run", "--config", str(cfg)]) == 0
        series_path = tmp_path / "out_series.csv"
        fit_json = tmp_path / "fit.json"
        assert (
            main(
                [
                    "fit",
                    "--input", str(series_path),
                    "--dim", "1",
                    "--t0", "0.0",
                    "--output", str(fit_json),
                ]
            )
            == 0
        )
        fit = json.loads(fit_json.read_text())
        assert fit["c"] > 0
        report_json = tmp_path / "merged.json"
        assert (
            main(
                [
                    "report",
                    "--input", str(series_path),
                    "--dim", "1",
                    "--t0", "0.0",
                    "--mu", "1.0",
                    "--output", str(report_json),
                ]
            )
            == 0
        )
        report = read_report_json(report_json)
        assert report["bound_form"] == "sqrt_linear"
        assert report["fitted_c"] == pytest.approx(fit["c"])
