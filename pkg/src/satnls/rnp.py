"""Weighted approximating norms, mollifier smoothing and the separation example.

The Y_n norms interpolate toward the plain L1 norm from above: each one is
a weighted L^(1+1/n) quantity whose prefactor and tail weight make
||f||_L1 <= ||f||_Y_n for every n, with the gap closing as n grows for
compactly supported bounded f.  The mollifier operation realizes the
smooth-approximation construction rho_l * (xi_n u) with the standard
normalized bump kernel and a C^1 cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateInput,
    NonFiniteInput,
    UnsupportedDimension,
)
from .grid import ComplexField, Grid, norm

# surface measure of the unit sphere, with the 0-sphere counted as 2 points
_OMEGA = {1: 2.0, 2: 2.0 * np.pi, 3: 4.0 * np.pi}

SampledFunction = ComplexField


@dataclass(frozen=True)
class YnSpec:
    """Index data of one approximating norm."""

    n: int
    dim: int

    @property
    def eps_n(self) -> float:
        return 1.0 / self.n

    @property
    def omega(self) -> float:
        return _OMEGA[self.dim]


def _check_values(f: SampledFunction) -> np.ndarray:
    vals = np.abs(f.values)
    if not np.all(np.isfinite(vals)):
        raise NonFiniteInput("sampled function contains NaN or Inf")
    return vals


def yn_norm(f: SampledFunction, n: int) -> float:
    """Weighted norm (2*omega*n^N)^(1/(n+1)) * ||f||-type quantity of order 1 + 1/n.

    Inside the ball of radius n the integrand is |f|^(1+1/n); outside it
    carries the weight |x|^(eps*(N+eps)) with eps = 1/n.  The part of the
    complement beyond the sampling box is dropped (compact-support usage).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    vals = _check_values(f)
    grid = f.grid
    spec = YnSpec(n=n, dim=grid.dim)
    eps = spec.eps_n
    r = grid.radius()
    hN = grid.cell_volume
    p = vals ** (1.0 + eps)
    inside = r <= n
    i_in = float(np.sum(p[inside]) * hN)
    i_out = float(np.sum(p[~inside] * r[~inside] ** (eps * (grid.dim + eps))) * hN)
    prefactor = (2.0 * spec.omega * n**grid.dim) ** (1.0 / (n + 1))
    return float(prefactor * (i_in + i_out) ** (1.0 / (1.0 + eps)))


def y0_norm(f: SampledFunction) -> float:
    """max of the n = 1 norm and the first weighted moment of |f|."""
    vals = _check_values(f)
    grid = f.grid
    r = grid.radius()
    # eps_1 = 1, so the moment weight is |x|^(N+1)
    moment = float(np.sum(vals * r ** (grid.dim + 1)) * grid.cell_volume)
    return max(yn_norm(f, 1), moment)


def yn_axiom_check(f: SampledFunction, n_list: list[int]) -> dict:
    """Domination and convergence report for the approximating norms.

    Verifies ||f||_L1 <= ||f||_Y_n for each n (small relative slack) and
    that the gap ||f||_Y_n - ||f||_L1 is non-increasing along n_list.
    """
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be strictly increasing")
    l1 = norm(f, "l1")
    entries = []
    for n in n_list:
        yn = yn_norm(f, n)
        entries.append({"n": n, "yn_norm": yn, "l1_norm": l1, "gap": yn - l1})
    slack = 1e-8 * max(1.0, l1)
    chain_ok = all(e["yn_norm"] >= l1 - slack for e in entries)
    gaps = [e["gap"] for e in entries]
    gaps_decreasing = all(b <= a + slack for a, b in zip(gaps, gaps[1:]))
    return {
        "entries": entries,
        "l1_norm": l1,
        "chain_ok": chain_ok,
        "gaps_decreasing": gaps_decreasing,
        "final_gap": gaps[-1] if gaps else 0.0,
    }


def _bump_kernel(ell: int, h: float) -> np.ndarray:
    """Samples of the scaled bump l*rho(l*x), renormalized to unit grid sum.

    rho(x) = c * exp(-1/(1 - x^2)) on |x| < 1 with c fixed so the kernel
    integrates to 1; discrete renormalization keeps the L1 contraction
    property of the convolution exact on the grid.
    """
    half = int(np.floor(1.0 / (ell * h))) + 1
    y = ell * h * np.arange(-half, half + 1)
    inside = np.abs(y) < 1.0
    k = np.zeros_like(y)
    k[inside] = np.exp(-1.0 / (1.0 - y[inside] ** 2))
    total = k.sum() * h
    if total == 0.0:
        raise DegenerateInput("kernel support falls below the grid resolution")
    return k / (k.sum() * h)


def _smooth_cutoff(x: np.ndarray, n_cut: int) -> np.ndarray:
    """C^1 cutoff: 1 on [-n, n], 0 outside [-(n+1), n+1], smoothstep joins."""
    s = np.clip(np.abs(x) - n_cut, 0.0, 1.0)
    return 1.0 - s * s * (3.0 - 2.0 * s)


def mollify(u: SampledFunction, ell: int, n_cut: int) -> SampledFunction:
    """Discrete rho_l * (xi_n u) on the same 1D grid."""
    if u.grid.dim != 1:
        raise UnsupportedDimension("mollify is implemented for 1D grids only")
    if ell < 1 or n_cut < 1:
        raise ValueError("ell and n_cut must be >= 1")
    _check_values(u)
    h = u.grid.spacing
    x = u.grid.axis_coordinates()
    cut = _smooth_cutoff(x, n_cut) * u.values
    kernel = _bump_kernel(ell, h)
    out = np.convolve(cut, kernel, mode="same") * h
    return u.copy_with(out)


def _weak_derivative_profile(t: float, x: np.ndarray) -> np.ndarray:
    """Pointwise weak-star derivative of x -> arctan|t + x| in time."""
    s = t + x
    return np.sign(s) / (1.0 + s**2)


def arctan_counterexample_sep(t: float, s: float, grid_1d: Grid) -> float:
    """Grid sup of the derivative separation for the arctan family.

    The time-derivative profiles of u(t)(x) = arctan|t + x| stay uniformly
    at least 1/2 apart in the sup norm for any t != s, which is what makes
    the derivative path non-measurable into L-infinity; this returns the
    grid maximum of the pointwise difference.
    """
    if t == s:
        raise DegenerateInput("separation requires t != s")
    x = grid_1d.axis_coordinates()
    diff = np.abs(_weak_derivative_profile(t, x) - _weak_derivative_profile(s, x))
    return float(diff.max())


def separation_profile(t: float, s: float, grid_1d: Grid) -> np.ndarray:
    """Pointwise |d/dt arctan|t+x| - d/dt arctan|s+x|| over the grid."""
    if t == s:
        raise DegenerateInput("separation requires t != s")
    x = grid_1d.axis_coordinates()
    return np.abs(_weak_derivative_profile(t, x) - _weak_derivative_profile(s, x))
