"""Readers for the satnls artifact formats.

This package consumes files only; it never imports the simulator.  The
formats are:

* series CSV: header t,mass_l2_sq,l1_norm,h1_seminorm,sup_abs,
  forcing_work,boundary_frac, one row per output time;
* run report JSON: object with at least extinction_time, fitted_c,
  bound_form, a_priori_ok, mass_residual_max, cross_validation_sup;
  fitted reports also carry dim, fit_t0 and fit_u_t0;
* norm table JSON: array of objects with n, yn_norm, l1_norm, gap;
* separation profile CSV: header x,abs_diff.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Union

import numpy as np

from .errors import MissingInput, SchemaError

PathLike = Union[str, Path]

SERIES_COLUMNS = (
    "t",
    "mass_l2_sq",
    "l1_norm",
    "h1_seminorm",
    "sup_abs",
    "forcing_work",
    "boundary_frac",
)

REPORT_FIELDS = (
    "extinction_time",
    "fitted_c",
    "bound_form",
    "a_priori_ok",
    "mass_residual_max",
    "cross_validation_sup",
)

NORM_ROW_FIELDS = ("n", "yn_norm", "l1_norm", "gap")

SEPARATION_COLUMNS = ("x", "abs_diff")


def _require(path: PathLike) -> Path:
    p = Path(path)
    if not p.is_file():
        raise MissingInput(f"input artifact not found: {p}")
    return p


def _read_csv_columns(path: PathLike, columns: tuple) -> dict:
    p = _require(path)
    with p.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{p}: empty file, expected header {columns}")
        if tuple(header) != columns:
            raise SchemaError(f"{p}: header {header} does not match {columns}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{p}: no data rows")
    try:
        arr = np.array(rows, dtype=float)
    except ValueError as exc:
        raise SchemaError(f"{p}: non-numeric data: {exc}") from exc
    if arr.shape[1] != len(columns):
        raise SchemaError(f"{p}: ragged rows")
    return {name: arr[:, i] for i, name in enumerate(columns)}


def load_series(path: PathLike) -> dict:
    out = _read_csv_columns(path, SERIES_COLUMNS)
    if np.any(np.diff(out["t"]) <= 0):
        raise SchemaError(f"{path}: time column must be strictly increasing")
    return out


def load_report(path: PathLike) -> dict:
    p = _require(path)
    try:
        report = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{p}: invalid JSON: {exc}") from exc
    if not isinstance(report, dict):
        raise SchemaError(f"{p}: report must be a JSON object")
    missing = [k for k in REPORT_FIELDS if k not in report]
    if missing:
        raise SchemaError(f"{p}: report missing fields {missing}")
    return report


def load_fit(report: dict, path: PathLike = "<report>") -> dict:
    """Extract the decay-envelope parameters from a report."""
    for key in ("fitted_c", "bound_form", "dim", "fit_t0", "fit_u_t0"):
        if report.get(key) is None:
            raise SchemaError(f"{path}: report has no usable fit ({key} missing)")
    form = report["bound_form"]
    if form not in ("sqrt_linear", "exponential", "algebraic"):
        raise SchemaError(f"{path}: unknown bound_form {form!r}")
    c = float(report["fitted_c"])
    if not c > 0:
        raise SchemaError(f"{path}: fitted_c must be positive, got {c}")
    return {
        "c": c,
        "form": form,
        "dim": int(report["dim"]),
        "t0": float(report["fit_t0"]),
        "u_t0": float(report["fit_u_t0"]),
    }


def load_norm_table(path: PathLike) -> dict:
    p = _require(path)
    try:
        table = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{p}: invalid JSON: {exc}") from exc
    if not isinstance(table, list) or not table:
        raise SchemaError(f"{p}: expected a non-empty JSON array of rows")
    for row in table:
        if not isinstance(row, dict) or any(k not in row for k in NORM_ROW_FIELDS):
            raise SchemaError(f"{p}: every row needs fields {NORM_ROW_FIELDS}")
    order = np.argsort([row["n"] for row in table])
    return {
        name: np.array([table[i][name] for i in order], dtype=float)
        for name in NORM_ROW_FIELDS
    }


def load_separation(path: PathLike) -> dict:
    return _read_csv_columns(path, SEPARATION_COLUMNS)


def envelope(fit: dict, t: np.ndarray) -> np.ndarray:
    """Evaluate the published decay envelope for t >= t0.

    sqrt_linear: (max(u0^(1/2) - c (t - t0), 0))^2;
    exponential: u0 exp(-c (t - t0));
    algebraic:   u0 / (1 + c u0^((N-2)/2) (t - t0))^(2/(N-2)).
    """
    dt = np.maximum(np.asarray(t, dtype=float) - fit["t0"], 0.0)
    u0, c = fit["u_t0"], fit["c"]
    if fit["form"] == "sqrt_linear":
        return np.maximum(np.sqrt(u0) - c * dt, 0.0) ** 2
    if fit["form"] == "exponential":
        return u0 * np.exp(-c * dt)
    n = fit["dim"]
    return u0 / (1.0 + c * u0 ** ((n - 2) / 2) * dt) ** (2 / (n - 2))
