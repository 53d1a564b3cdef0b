import json

import numpy as np

from satnls_plots.cli import main

SERIES_HEADER = "t,mass_l2_sq,l1_norm,h1_seminorm,sup_abs,forcing_work,boundary_frac"


def write_series(path):
    t = np.linspace(0, 1, 30)
    lines = [SERIES_HEADER]
    for ti in t:
        lines.append(f"{float(ti)!r},{float(np.exp(-4.0 * ti))!r},0.0,0.0,0.0,0.0,0.0")
    path.write_text("\n".join(lines) + "\n")
    return path


def test_decay_linear_success(tmp_path, capsys):
    series = write_series(tmp_path / "s.csv")
    out = tmp_path / "fig.png"
    code = main(["decay_linear", "--output", str(out), "--series", str(series)])
    assert code == 0
    assert out.is_file() and out.stat().st_size > 0
    assert "wrote" in capsys.readouterr().out


def test_missing_input_exit_3(tmp_path, capsys):
    code = main(
        [
            "decay_linear",
            "--output", str(tmp_path / "fig.png"),
            "--series", str(tmp_path / "absent.csv"),
        ]
    )
    assert code == 3
    capsys.readouterr()


def test_schema_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    code = main(
        ["decay_log", "--output", str(tmp_path / "f.png"), "--series", str(bad)]
    )
    assert code == 2
    capsys.readouterr()


def test_bad_usage_exit_2(capsys):
    assert main(["pie_chart", "--output", "x.png"]) == 2
    capsys.readouterr()


def test_bound_overlay_violation_exit_3(tmp_path, capsys):
    series = tmp_path / "grow.csv"
    t = np.linspace(0, 1, 20)
    lines = [SERIES_HEADER]
    for ti in t:
        lines.append(f"{float(ti)!r},{float((1.0 + ti) ** 2)!r},0.0,0.0,0.0,0.0,0.0")
    series.write_text("\n".join(lines) + "\n")
    report = tmp_path / "r.json"
    report.write_text(
        json.dumps(
            {
                "extinction_time": None,
                "fitted_c": 2.0,
                "bound_form": "exponential",
                "a_priori_ok": True,
                "mass_residual_max": 0.0,
                "cross_validation_sup": None,
                "dim": 2,
                "fit_t0": 0.0,
                "fit_u_t0": 1.0,
            }
        )
    )
    code = main(
        [
            "bound_overlay",
            "--output", str(tmp_path / "f.png"),
            "--series", str(series),
            "--report", str(report),
        ]
    )
    assert code == 3
    capsys.readouterr()
