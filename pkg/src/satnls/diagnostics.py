"""Quantitative checks on recorded runs: balance identities and decay bounds.

The central object is the per-step diagnostic series.  All time quadrature
is trapezoidal.  Decay-constant fits use uniform domination (the largest
constant whose bound curve stays above the data and touches it), matching
the upper-bound character of the decay statements being tested.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    DegenerateInput,
    EmptySeries,
    GridMismatch,
    InsufficientData,
    InvalidTime,
    NoPositiveConstant,
)
from .grid import ComplexField, norm


@dataclass(frozen=True)
class DiagSeries:
    """Per-time-step record of norms and balance terms."""

    times: np.ndarray
    mass_sq: np.ndarray
    l1: np.ndarray
    h1semi: np.ndarray
    sup_abs: np.ndarray
    forcing_work: np.ndarray
    boundary_frac: np.ndarray

    def __post_init__(self):
        n = len(self.times)
        for name in ("mass_sq", "l1", "h1semi", "sup_abs", "forcing_work", "boundary_frac"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"series column {name} has mismatched length")
        if n and np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        if np.any(self.mass_sq < 0):
            raise ValueError("mass_sq must be nonnegative")

    def __len__(self) -> int:
        return len(self.times)


def _require_nonempty(series: DiagSeries) -> None:
    if len(series) == 0:
        raise EmptySeries("diagnostic series is empty")


def _cumtrapz(y: np.ndarray, t: np.ndarray) -> np.ndarray:
    out = np.zeros_like(y, dtype=float)
    if len(y) > 1:
        out[1:] = np.cumsum(0.5 * (y[1:] + y[:-1]) * np.diff(t))
    return out


def mass_balance_residual(series: DiagSeries, mu: float) -> np.ndarray:
    """Cumulative residual of the dissipation balance.

    r(t) = m(t)/2 - m(0)/2 + mu * int_0^t ||u||_1 - int_0^t Im(f, u);
    on the finite box the balance is an identity, so |r| is pure scheme
    error and shrinks with dt.
    """
    _require_nonempty(series)
    damping = _cumtrapz(series.l1, series.times)
    pumping = _cumtrapz(series.forcing_work, series.times)
    return (
        0.5 * series.mass_sq
        - 0.5 * series.mass_sq[0]
        + mu * damping
        - pumping
    )


def gn_ratio(u: ComplexField, dim: int) -> float:
    """Interpolation ratio ||u||_2^((N+2)/2) / (||u||_1 * ||grad u||_2^(N/2))."""
    l1 = norm(u, "l1")
    h1 = norm(u, "h1semi")
    if l1 == 0.0 or h1 == 0.0:
        raise DegenerateInput("ratio undefined for fields with zero L1 or H1 norm")
    l2 = norm(u, "l2")
    return float(l2 ** ((dim + 2) / 2.0) / (l1 * h1 ** (dim / 2.0)))


def extinction_time(series: DiagSeries, tol: float) -> Optional[float]:
    """Earliest time after which the L2 norm stays at or below tol."""
    _require_nonempty(series)
    if not (tol > 0):
        raise ValueError(f"tol must be positive, got {tol}")
    mass = np.sqrt(series.mass_sq)
    below = mass <= tol
    if not below[-1]:
        return None
    # last index where mass exceeds tol, extinction starts just after
    above = np.nonzero(~below)[0]
    if len(above) == 0:
        return float(series.times[0])
    idx = above[-1] + 1
    if idx >= len(series):
        return None
    return float(series.times[idx])


@dataclass(frozen=True)
class BoundCurveParams:
    """Fitted parameters of the dimension-dependent decay envelope."""

    dim: int
    c: float
    u_t0: float
    t0: float

    def __post_init__(self):
        if not (self.c > 0):
            raise NoPositiveConstant(f"decay constant must be positive, got {self.c}")
        if self.u_t0 < 0:
            raise ValueError("u_t0 must be nonnegative")


def bound_curve(params: BoundCurveParams, t) -> np.ndarray:
    """Evaluate the decay envelope at t >= t0.

    dim 1: quadratic square-root profile (max(u0^(1/2) - c*(t-t0), 0))^2;
    dim 2: exponential u0 * exp(-c*(t-t0));
    dim >= 3: algebraic u0 / (1 + c * u0^((N-2)/2) * (t-t0))^(2/(N-2)).
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < params.t0 - 1e-12):
        raise InvalidTime("bound curve is only defined for t >= t0")
    dt = np.maximum(t - params.t0, 0.0)
    if params.dim == 1:
        out = np.maximum(np.sqrt(params.u_t0) - params.c * dt, 0.0) ** 2
    elif params.dim == 2:
        out = params.u_t0 * np.exp(-params.c * dt)
    else:
        k = (params.dim - 2) / 2.0
        out = params.u_t0 / (1.0 + params.c * params.u_t0**k * dt) ** (1.0 / k)
    return out if out.ndim else float(out)


def fit_decay_constant(series: DiagSeries, dim: int, t0: float) -> BoundCurveParams:
    """Largest c whose envelope dominates the measured L2 norm.

    Uniform domination: c is the minimum over samples of the implied
    constant, so the returned curve touches the data at one sample or more.
    """
    _require_nonempty(series)
    mass = np.sqrt(series.mass_sq)
    sel = series.times >= t0 - 1e-12
    t = series.times[sel]
    m = mass[sel]
    if len(t) < 10 or not np.any(m > 0):
        raise InsufficientData(
            "need at least 10 samples past t0 with positive mass"
        )
    u_t0 = float(np.interp(t0, series.times, mass))
    # only samples strictly past t0 with positive mass constrain c
    active = (t > t0 + 1e-12) & (m > 0)
    if not np.any(active):
        raise InsufficientData("no constraining samples past t0")
    dt = t[active] - t0
    md = m[active]
    if dim == 1:
        implied = (np.sqrt(u_t0) - np.sqrt(md)) / dt
    elif dim == 2:
        implied = np.log(u_t0 / md) / dt
    else:
        k = (dim - 2) / 2.0
        implied = ((u_t0 / md) ** k - 1.0) / (u_t0**k * dt)
    c = float(implied.min())
    if not (c > 0):
        raise NoPositiveConstant(
            f"no positive constant dominates the data (min implied {c})"
        )
    return BoundCurveParams(dim=dim, c=c, u_t0=u_t0, t0=t0)


def a_priori_check(
    series: DiagSeries, forcing_l2: np.ndarray, slack: float = 1e-8
) -> tuple[bool, float]:
    """Verify ||u(t)||_2 <= ||u0||_2 + int_0^t ||f||_2 at all samples.

    forcing_l2 holds ||f(t_n)||_2 at the series times.  Returns the verdict
    and the largest violation (negative when the bound holds strictly).
    """
    _require_nonempty(series)
    if len(forcing_l2) != len(series):
        raise ValueError("forcing_l2 must align with the series times")
    mass = np.sqrt(series.mass_sq)
    envelope = mass[0] + _cumtrapz(np.asarray(forcing_l2, float), series.times)
    violation = float(np.max(mass - envelope - slack))
    return violation <= 0.0, violation


def continuous_dependence_check(
    series_a: DiagSeries,
    series_b: DiagSeries,
    pairwise_field_diffs: np.ndarray,
    forcing_l2_diff: np.ndarray,
) -> bool:
    """Contraction inequality across every ordered pair of output times.

    pairwise_field_diffs[n] = ||u_a(t_n) - u_b(t_n)||_2 and
    forcing_l2_diff[n] = ||f_a(t_n) - f_b(t_n)||_2 on the shared time grid.
    Checks d(t) <= d(s) + int_s^t ||f_a - f_b||_2 + slack for all s <= t.
    """
    if len(series_a) != len(series_b) or np.any(
        np.abs(series_a.times - series_b.times) > 1e-12
    ):
        raise GridMismatch("runs must share one output time grid")
    _require_nonempty(series_a)
    t = series_a.times
    d = np.asarray(pairwise_field_diffs, dtype=float)
    fdiff = np.asarray(forcing_l2_diff, dtype=float)
    if len(d) != len(t) or len(fdiff) != len(t):
        raise ValueError("difference arrays must align with the series times")
    dt = float(np.max(np.diff(t))) if len(t) > 1 else 0.0
    slack = 1e-8 + 2.0 * dt * float(fdiff.max(initial=0.0))
    cum = _cumtrapz(fdiff, t)
    # d(t) - cum(t) <= d(s) - cum(s) + slack for all s <= t
    g = d - cum
    running_min = np.minimum.accumulate(g)
    return bool(np.all(g - running_min <= slack))


def stabilization_check(series: DiagSeries, tail_fraction: float) -> float:
    """Max of the L2 norm over the final tail_fraction of the series."""
    _require_nonempty(series)
    if not (0 < tail_fraction <= 1):
        raise ValueError("tail_fraction must lie in (0, 1]")
    n = len(series)
    start = min(n - 1, int(np.floor(n * (1.0 - tail_fraction))))
    return float(np.sqrt(series.mass_sq[start:]).max())
