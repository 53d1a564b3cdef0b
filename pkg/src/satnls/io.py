"""CSV and JSON artifact schemas shared by the CLI and downstream tooling.

Three file kinds are produced:

* diagnostic series CSV with columns t, mass_l2_sq, l1_norm, h1_seminorm,
  sup_abs, forcing_work, boundary_frac (header required, one row per
  output time);
* field snapshot CSV with columns index_0[,index_1[,index_2]], re, im;
* JSON run report with the fields extinction_time (nullable), fitted_c,
  bound_form, a_priori_ok, mass_residual_max, cross_validation_sup.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .diagnostics import DiagSeries
from .errors import ConfigError, GridMismatch
from .grid import ComplexField, Grid, make_grid

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

PathLike = Union[str, Path]


def write_series_csv(path: PathLike, series: DiagSeries) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    cols = (
        series.times,
        series.mass_sq,
        series.l1,
        series.h1semi,
        series.sup_abs,
        series.forcing_work,
        series.boundary_frac,
    )
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SERIES_COLUMNS)
        for row in zip(*cols):
            writer.writerow([repr(float(v)) for v in row])


def read_series_csv(path: PathLike) -> DiagSeries:
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != SERIES_COLUMNS:
            raise ConfigError(
                f"{path}: expected series header {','.join(SERIES_COLUMNS)}"
            )
        rows = [[float(v) for v in row] for row in reader if row]
    data = np.array(rows, dtype=float).reshape(len(rows), len(SERIES_COLUMNS))
    return DiagSeries(
        times=data[:, 0],
        mass_sq=data[:, 1],
        l1=data[:, 2],
        h1semi=data[:, 3],
        sup_abs=data[:, 4],
        forcing_work=data[:, 5],
        boundary_frac=data[:, 6],
    )


def write_field_csv(path: PathLike, field: ComplexField) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    grid = field.grid
    idx = np.indices(grid.shape).reshape(grid.dim, -1).T
    flat = field.values.ravel()
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"index_{d}" for d in range(grid.dim)] + ["re", "im"])
        for row, z in zip(idx, flat):
            writer.writerow([*map(int, row), repr(float(z.real)), repr(float(z.imag))])


def read_field_csv(path: PathLike, half_width: float) -> ComplexField:
    """Rebuild a field from its snapshot CSV.

    The grid dimension and size are implied by the index columns; the box
    half width is not stored in the file and must be supplied.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or header[-2:] != ["re", "im"]:
            raise ConfigError(f"{path}: expected field header ending in re,im")
        dim = len(header) - 2
        expected = [f"index_{d}" for d in range(dim)] + ["re", "im"]
        if header != expected:
            raise ConfigError(f"{path}: expected field header {','.join(expected)}")
        if dim not in (1, 2, 3):
            raise ConfigError(f"{path}: field files must have 1 to 3 index columns")
        rows = [row for row in reader if row]
    idx = np.array([[int(v) for v in row[:dim]] for row in rows])
    vals = np.array([complex(float(row[dim]), float(row[dim + 1])) for row in rows])
    m = int(idx.max()) + 1
    grid = make_grid(dim, half_width, m)
    out = np.zeros(grid.shape, dtype=complex)
    out[tuple(idx.T)] = vals
    if len(rows) != out.size:
        raise GridMismatch(
            f"{path}: {len(rows)} rows do not fill a {m}^{dim} grid"
        )
    return ComplexField(grid, out)


def _jsonable(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def write_report_json(path: PathLike, report: dict) -> None:
    missing = [k for k in REPORT_FIELDS if k not in report]
    if missing:
        raise ConfigError(f"report is missing required fields: {missing}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n")


def read_report_json(path: PathLike) -> dict:
    report = json.loads(Path(path).read_text())
    missing = [k for k in REPORT_FIELDS if k not in report]
    if missing:
        raise ConfigError(f"{path}: report is missing required fields: {missing}")
    return report
