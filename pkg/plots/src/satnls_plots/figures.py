"""Figure builders, one per supported kind.

Every builder takes already-loaded artifact data and returns a matplotlib
Figure; `render` dispatches from file paths and `save_figure` writes PNG
or SVG depending on the output extension.  Rendering is deterministic:
no timestamps, no rcParams dependence beyond the Agg backend.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

# fixed salt so SVG element ids do not vary between runs
matplotlib.rcParams["svg.hashsalt"] = "satnls-plots"

from .data import (
    envelope,
    load_fit,
    load_norm_table,
    load_report,
    load_separation,
    load_series,
)
from .errors import InconsistentInput, SchemaError

FIGURE_KINDS = (
    "decay_linear",
    "decay_log",
    "bound_overlay",
    "yn_convergence",
    "separation_map",
)


def _new_axes(title: str, xlabel: str, ylabel: str):
    fig, ax = plt.subplots(figsize=(6.0, 4.0), dpi=120)
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    return fig, ax


def decay_linear(series: dict) -> plt.Figure:
    """L2 norm and its square root against time on linear axes.

    The square-root curve is the one that extinguishes along a straight
    line for the one-dimensional absorption-dominated runs.
    """
    fig, ax = _new_axes("norm decay", "t", "norm")
    l2 = np.sqrt(series["mass_l2_sq"])
    ax.plot(series["t"], l2, label="L2 norm", color="tab:blue")
    ax.plot(
        series["t"],
        np.sqrt(l2),
        label="sqrt of L2 norm",
        color="tab:orange",
        linestyle="--",
    )
    ax.legend()
    fig.tight_layout()
    return fig


def decay_log(series: dict) -> plt.Figure:
    """L2 norm against time on a log vertical axis; exact zeros are
    dropped rather than clipped."""
    l2 = np.sqrt(series["mass_l2_sq"])
    keep = l2 > 0
    if not np.any(keep):
        raise SchemaError("series is identically zero, nothing to plot on a log axis")
    fig, ax = _new_axes("norm decay (log scale)", "t", "L2 norm")
    ax.semilogy(series["t"][keep], l2[keep], color="tab:blue")
    fig.tight_layout()
    return fig


def bound_overlay(series: dict, report: dict) -> plt.Figure:
    """Measured L2 norm with the fitted decay envelope drawn on top.

    Raises InconsistentInput when the envelope fails to dominate the data
    it was fitted to (tolerance 1e-9 relative to the initial norm).
    """
    fit = load_fit(report)
    t = series["t"]
    data = np.sqrt(series["mass_l2_sq"])
    sel = t >= fit["t0"]
    env = envelope(fit, t[sel])
    tol = 1e-9 * max(data[0], 1e-300)
    gap = float(np.max(data[sel] - env))
    if gap > tol:
        raise InconsistentInput(
            f"envelope fails to dominate the series by {gap:.3e} (tol {tol:.3e})"
        )
    fig, ax = _new_axes("decay bound overlay", "t", "L2 norm")
    ax.plot(t, data, label="measured", color="tab:blue")
    ax.plot(
        t[sel],
        env,
        label=f"envelope ({fit['form']}, c={fit['c']:.4g})",
        color="tab:red",
        linestyle="--",
    )
    ax.legend()
    fig.tight_layout()
    return fig


def yn_convergence(table: dict) -> plt.Figure:
    """Weighted norm values against the index n, with the L1 norm they
    converge down to drawn as a horizontal reference."""
    fig, ax = _new_axes("weighted norm convergence", "n", "norm value")
    ax.plot(table["n"], table["yn_norm"], marker="o", color="tab:blue", label="Y_n")
    l1 = float(table["l1_norm"][0])
    ax.axhline(l1, color="tab:gray", linestyle=":", label=f"L1 norm = {l1:.4g}")
    ax.set_xscale("log")
    ax.legend()
    fig.tight_layout()
    return fig


def separation_map(profile: dict) -> plt.Figure:
    """Pointwise gap between two weak-solution profiles, with the 1/2
    uniqueness-failure threshold marked."""
    fig, ax = _new_axes("solution separation", "x", "|difference|")
    ax.plot(profile["x"], profile["abs_diff"], color="tab:blue")
    ax.axhline(0.5, color="tab:red", linestyle="--", label="threshold 1/2")
    ax.legend()
    fig.tight_layout()
    return fig


def save_figure(fig: plt.Figure, path) -> Path:
    path = Path(path)
    ext = path.suffix.lower().lstrip(".")
    if ext not in ("png", "svg"):
        raise SchemaError(f"unsupported output format {path.suffix!r}, use .png or .svg")
    path.parent.mkdir(parents=True, exist_ok=True)
    # strip writer and date stamps so identical inputs give identical bytes
    metadata = {"Software": None} if ext == "png" else {"Date": None}
    fig.savefig(path, format=ext, metadata=metadata)
    plt.close(fig)
    return path


def render(kind: str, inputs: dict, output) -> Path:
    """Load artifacts, build the figure of the given kind and write it.

    inputs carries "series", "report", "norms" or "profile" paths as the
    kind requires.
    """
    if kind == "decay_linear":
        fig = decay_linear(load_series(_need(inputs, "series", kind)))
    elif kind == "decay_log":
        fig = decay_log(load_series(_need(inputs, "series", kind)))
    elif kind == "bound_overlay":
        fig = bound_overlay(
            load_series(_need(inputs, "series", kind)),
            load_report(_need(inputs, "report", kind)),
        )
    elif kind == "yn_convergence":
        fig = yn_convergence(load_norm_table(_need(inputs, "norms", kind)))
    elif kind == "separation_map":
        fig = separation_map(load_separation(_need(inputs, "profile", kind)))
    else:
        raise SchemaError(f"unknown figure kind {kind!r}, expected one of {FIGURE_KINDS}")
    return save_figure(fig, output)


def _need(inputs: dict, key: str, kind: str):
    value = inputs.get(key)
    if value is None:
        raise SchemaError(f"figure kind {kind!r} requires the {key!r} input")
    return value
