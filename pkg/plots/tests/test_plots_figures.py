import json

import numpy as np
import pytest

from satnls_plots import (
    InconsistentInput,
    MissingInput,
    SchemaError,
    envelope,
    load_fit,
    load_norm_table,
    load_report,
    load_separation,
    load_series,
    render,
)

SERIES_HEADER = "t,mass_l2_sq,l1_norm,h1_seminorm,sup_abs,forcing_work,boundary_frac"


def write_series(path, t, mass_sq):
    lines = [SERIES_HEADER]
    for ti, mi in zip(t, mass_sq):
        lines.append(f"{float(ti)!r},{float(mi)!r},0.0,0.0,0.0,0.0,0.0")
    path.write_text("\n".join(lines) + "\n")
    return path


def write_report(path, **overrides):
    report = {
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
    report.update(overrides)
    path.write_text(json.dumps(report))
    return path


@pytest.fixture
def exp_series(tmp_path):
    t = np.linspace(0, 1, 50)
    return write_series(tmp_path / "s.csv", t, np.exp(-4.0 * t))


class TestLoaders:
    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingInput):
            load_series(tmp_path / "nope.csv")

    def test_bad_series_header(self, tmp_path):
        p = tmp_path / "s.csv"
        p.write_text("a,b\n1,2\n")
        with pytest.raises(SchemaError):
            load_series(p)

    def test_non_numeric_rows(self, tmp_path):
        p = tmp_path / "s.csv"
        p.write_text(SERIES_HEADER + "\n0.0,fast,0,0,0,0,0\n")
        with pytest.raises(SchemaError):
            load_series(p)

    def test_non_monotone_time(self, tmp_path):
        p = write_series(tmp_path / "s.csv", [0.0, 0.5, 0.5], [1.0, 1.0, 1.0])
        with pytest.raises(SchemaError):
            load_series(p)

    def test_series_round_values(self, exp_series):
        s = load_series(exp_series)
        assert s["t"].shape == (50,)
        assert s["mass_l2_sq"][0] == 1.0

    def test_report_missing_field(self, tmp_path):
        p = tmp_path / "r.json"
        p.write_text('{"fitted_c": 1.0}')
        with pytest.raises(SchemaError):
            load_report(p)

    def test_report_loads(self, tmp_path):
        p = write_report(tmp_path / "r.json")
        fit = load_fit(load_report(p))
        assert fit["form"] == "exponential" and fit["c"] == 2.0

    def test_fit_requires_positive_constant(self, tmp_path):
        p = write_report(tmp_path / "r.json", fitted_c=0.0)
        with pytest.raises(SchemaError):
            load_fit(load_report(p))

    def test_fit_requires_known_form(self, tmp_path):
        p = write_report(tmp_path / "r.json", bound_form="cubic")
        with pytest.raises(SchemaError):
            load_fit(load_report(p))

    def test_norm_table_schema(self, tmp_path):
        p = tmp_path / "n.json"
        p.write_text('[{"n": 1, "yn_norm": 2.0}]')
        with pytest.raises(SchemaError):
            load_norm_table(p)

    def test_norm_table_sorted_by_n(self, tmp_path):
        p = tmp_path / "n.json"
        rows = [
            {"n": 3, "yn_norm": 1.86, "l1_norm": 1.0, "gap": 0.86},
            {"n": 1, "yn_norm": 2.0, "l1_norm": 1.0, "gap": 1.0},
        ]
        p.write_text(json.dumps(rows))
        table = load_norm_table(p)
        assert list(table["n"]) == [1.0, 3.0]

    def test_separation_schema(self, tmp_path):
        p = tmp_path / "sep.csv"
        p.write_text("x,abs_diff\n0.0,1.6\n1.0,0.8\n")
        prof = load_separation(p)
        assert prof["abs_diff"].max() == 1.6


class TestEnvelope:
    def test_sqrt_linear(self):
        fit = {"form": "sqrt_linear", "c": 2.0, "u_t0": 4.0, "t0": 0.0, "dim": 1}
        assert envelope(fit, np.array([0.0]))[0] == pytest.approx(4.0)
        assert envelope(fit, np.array([0.5]))[0] == pytest.approx(1.0)
        assert envelope(fit, np.array([5.0]))[0] == 0.0

    def test_exponential(self):
        fit = {"form": "exponential", "c": 1.0, "u_t0": 1.0, "t0": 0.0, "dim": 2}
        assert envelope(fit, np.array([2.0]))[0] == pytest.approx(np.exp(-2.0))

    def test_algebraic(self):
        fit = {"form": "algebraic", "c": 1.0, "u_t0": 1.0, "t0": 0.0, "dim": 3}
        assert envelope(fit, np.array([3.0]))[0] == pytest.approx(1.0 / 16.0)


class TestRender:
    @pytest.mark.parametrize("ext", ["png", "svg"])
    def test_decay_linear_deterministic(self, tmp_path, exp_series, ext):
        a = render("decay_linear", {"series": exp_series}, tmp_path / f"a.{ext}")
        b = render("decay_linear", {"series": exp_series}, tmp_path / f"b.{ext}")
        assert a.stat().st_size > 0
        assert a.read_bytes() == b.read_bytes()

    def test_decay_log(self, tmp_path, exp_series):
        out = render("decay_log", {"series": exp_series}, tmp_path / "log.png")
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_decay_log_rejects_all_zero(self, tmp_path):
        p = write_series(tmp_path / "z.csv", [0.0, 1.0], [0.0, 0.0])
        with pytest.raises(SchemaError):
            render("decay_log", {"series": p}, tmp_path / "z.png")

    def test_bound_overlay_dominates(self, tmp_path, exp_series):
        # envelope exp(-2t) dominates data exp(-2t) exactly
        report = write_report(tmp_path / "r.json")
        out = render(
            "bound_overlay",
            {"series": exp_series, "report": report},
            tmp_path / "o.svg",
        )
        assert out.stat().st_size > 0

    def test_bound_overlay_violation(self, tmp_path):
        t = np.linspace(0, 1, 20)
        series = write_series(tmp_path / "grow.csv", t, (1.0 + t) ** 2)
        report = write_report(tmp_path / "r.json")
        with pytest.raises(InconsistentInput):
            render(
                "bound_overlay",
                {"series": series, "report": report},
                tmp_path / "o.png",
            )

    def test_yn_convergence(self, tmp_path):
        rows = [
            {"n": n, "yn_norm": 1.0 + 1.0 / n, "l1_norm": 1.0, "gap": 1.0 / n}
            for n in (1, 2, 5, 10, 100)
        ]
        p = tmp_path / "n.json"
        p.write_text(json.dumps(rows))
        out = render("yn_convergence", {"norms": p}, tmp_path / "yn.png")
        assert out.stat().st_size > 0

    def test_separation_map(self, tmp_path):
        x = np.linspace(-4, 4, 200)
        prof = tmp_path / "sep.csv"
        lines = ["x,abs_diff"] + [
            f"{float(xi)!r},{float(abs(np.arctan(xi + 1) - np.arctan(xi)))!r}"
            for xi in x
        ]
        prof.write_text("\n".join(lines) + "\n")
        out = render("separation_map", {"profile": prof}, tmp_path / "sep.png")
        assert out.stat().st_size > 0

    def test_unknown_kind(self, tmp_path, exp_series):
        with pytest.raises(SchemaError):
            render("pie_chart", {"series": exp_series}, tmp_path / "p.png")

    def test_missing_required_input(self, tmp_path):
        with pytest.raises(SchemaError):
            render("bound_overlay", {"series": None, "report": None}, tmp_path / "o.png")

    def test_bad_output_extension(self, tmp_path, exp_series):
        with pytest.raises(SchemaError):
            render("decay_linear", {"series": exp_series}, tmp_path / "fig.pdf")
