"""Uniform Dirichlet box discretization and field-level norm primitives.

The computational domain is the box [-L, L]^N with homogeneous Dirichlet
boundary conditions.  Only the M^N interior nodes are stored; the node
coordinates along each axis are x_i = -L + i*h for i = 1..M with spacing
h = 2L/(M+1), so the boundary nodes x_0 = -L and x_{M+1} = L carry the
implicit zero values.  All quadrature is the rectangle rule (node sum
times h^N), which is consistent with the second-order finite-difference
stencils used by the integrators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    GridMismatch,
    InvalidDimension,
    InvalidSize,
    NonFiniteInput,
)

_NORM_KINDS = ("l2", "l1", "linf", "h1semi")


@dataclass(frozen=True)
class Grid:
    """Interior-point discretization of the box [-L, L]^dim."""

    dim: int
    half_width: float
    points_per_dim: int

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.points_per_dim + 1)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_dim,) * self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    def axis_coordinates(self) -> np.ndarray:
        """Interior node positions along one axis."""
        h = self.spacing
        return -self.half_width + h * np.arange(1, self.points_per_dim + 1)

    def meshgrid(self) -> tuple[np.ndarray, ...]:
        x = self.axis_coordinates()
        return np.meshgrid(*([x] * self.dim), indexing="ij")

    def radius(self) -> np.ndarray:
        """Euclidean distance of each node from the origin."""
        axes = self.meshgrid()
        return np.sqrt(sum(a**2 for a in axes))


def make_grid(dim: int, half_width: float, points_per_dim: int) -> Grid:
    if dim not in (1, 2, 3):
        raise InvalidDimension(f"dim must be 1, 2 or 3, got {dim}")
    if not (half_width > 0):
        raise InvalidSize(f"half_width must be positive, got {half_width}")
    if points_per_dim < 8:
        raise InvalidSize(f"points_per_dim must be >= 8, got {points_per_dim}")
    return Grid(dim=dim, half_width=float(half_width), points_per_dim=int(points_per_dim))


@dataclass(frozen=True)
class ComplexField:
    """Complex-valued function sampled at the interior nodes of a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.grid.shape:
            raise GridMismatch(
                f"field shape {values.shape} does not match grid shape {self.grid.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise NonFiniteInput("field contains NaN or Inf entries")
        object.__setattr__(self, "values", values)

    def copy_with(self, values: np.ndarray) -> "ComplexField":
        return ComplexField(self.grid, values)


def zeros(grid: Grid) -> ComplexField:
    return ComplexField(grid, np.zeros(grid.shape, dtype=complex))


def field_from_function(grid: Grid, fn: Callable[..., np.ndarray]) -> ComplexField:
    """Sample fn(x) / fn(x, y) / fn(x, y, z) at the interior nodes."""
    return ComplexField(grid, np.asarray(fn(*grid.meshgrid()), dtype=complex))


def _check_finite(u: ComplexField) -> None:
    if not np.all(np.isfinite(u.values)):
        raise NonFiniteInput("field contains NaN or Inf entries")


def _check_same_grid(u: ComplexField, v: ComplexField) -> None:
    if u.grid != v.grid:
        raise GridMismatch("fields live on different grids")


def laplacian(u: ComplexField) -> ComplexField:
    """Second-order central-difference Laplacian with zero Dirichlet ghosts."""
    _check_finite(u)
    h2 = u.grid.spacing**2
    vals = u.values
    out = np.zeros_like(vals)
    for axis in range(u.grid.dim):
        padded = np.pad(vals, [(1, 1) if a == axis else (0, 0) for a in range(u.grid.dim)])
        lo = tuple(
            slice(0, -2) if a == axis else slice(None) for a in range(u.grid.dim)
        )
        hi = tuple(
            slice(2, None) if a == axis else slice(None) for a in range(u.grid.dim)
        )
        out += padded[lo] + padded[hi] - 2.0 * vals
    return u.copy_with(out / h2)


def norm(u: ComplexField, kind: str) -> float:
    """Grid norm: 'l2', 'l1', 'linf' (pointwise sup) or 'h1semi'."""
    kind = kind.lower()
    if kind not in _NORM_KINDS:
        raise ValueError(f"unknown norm kind {kind!r}, expected one of {_NORM_KINDS}")
    _check_finite(u)
    absvals = np.abs(u.values)
    hN = u.grid.cell_volume
    if kind == "l2":
        return float(np.sqrt(np.sum(absvals**2) * hN))
    if kind == "l1":
        return float(np.sum(absvals) * hN)
    if kind == "linf":
        return float(absvals.max()) if absvals.size else 0.0
    # H1 seminorm: forward differences including the Dirichlet closure at
    # both ends of every axis (M+1 differences per line).
    h = u.grid.spacing
    total = 0.0
    for axis in range(u.grid.dim):
        padded = np.pad(
            u.values, [(1, 1) if a == axis else (0, 0) for a in range(u.grid.dim)]
        )
        diffs = np.diff(padded, axis=axis)
        total += np.sum(np.abs(diffs) ** 2)
    return float(np.sqrt(total * hN / h**2))


def inner_l2(u: ComplexField, v: ComplexField) -> float:
    """Real L2 pairing Re sum(u * conj(v)) * h^N."""
    _check_same_grid(u, v)
    return float(np.real(np.sum(u.values * np.conj(v.values))) * u.grid.cell_volume)


def boundary_mass_fraction(u: ComplexField, shell_width: int) -> float:
    """Fraction of L2 mass carried by the outermost shell_width node layers."""
    if shell_width >= u.grid.points_per_dim / 2:
        raise InvalidSize(
            f"shell_width {shell_width} too large for {u.grid.points_per_dim} points per dim"
        )
    sq = np.abs(u.values) ** 2
    total = sq.sum()
    if total == 0.0:
        return 0.0
    interior = tuple(slice(shell_width, -shell_width) for _ in range(u.grid.dim))
    return float((total - sq[interior].sum()) / total)
