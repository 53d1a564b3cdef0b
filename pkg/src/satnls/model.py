"""Potential, forcing and the saturating nonlinearity with its regularization.

The damping term mu * u/|u| has amplitude-independent modulus.  At zeros of
u the quotient is multivalued; the saturated-section selection below fills
in a bounded value there: where the forcing is weak enough (|f| <= mu) the
stationarity balance i*mu*U = f is solvable and used, otherwise the value
is clipped to the unit-modulus vector aligned with the reignition
direction -i*f/|f|.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Union

import numpy as np

from .errors import (
    ComplexPotential,
    DegenerateInput,
    GridMismatch,
    InvalidDimension,
    InvalidExponent,
    InvalidSection,
    NonFiniteInput,
    UnknownKind,
    ValidationError,
    ZeroField,
)
from .grid import ComplexField, Grid, norm, zeros

# A potential part is either absent, a constant, a grid sample array, or a
# callable of the node coordinate arrays.
PotentialPart = Union[None, float, np.ndarray, Callable[..., np.ndarray]]


@dataclass(frozen=True)
class PotentialSpec:
    """Real potential V = v1 + v2 (bounded part + integrable part)."""

    v1: PotentialPart = None
    v2: PotentialPart = None
    beta: Optional[float] = None
    p_v: Optional[float] = None


def _sample_part(part: PotentialPart, grid: Grid) -> np.ndarray:
    if part is None:
        return np.zeros(grid.shape)
    if callable(part):
        part = part(*grid.meshgrid())
    arr = np.asarray(part)
    if np.iscomplexobj(arr) and np.any(np.abs(arr.imag) > 0):
        raise ComplexPotential("potential parts must be real-valued")
    arr = np.broadcast_to(np.real(arr).astype(float), grid.shape)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput("potential contains NaN or Inf entries")
    return np.array(arr)


def sample_potential(spec: Optional[PotentialSpec], grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Sample the bounded and integrable parts at the interior nodes."""
    if spec is None:
        z = np.zeros(grid.shape)
        return z, z.copy()
    return _sample_part(spec.v1, grid), _sample_part(spec.v2, grid)


def validate_potential(spec: PotentialSpec, dim: int) -> PotentialSpec:
    """Assign the exponent of the integrable part and reject bad inputs."""
    if dim not in (1, 2, 3):
        raise InvalidDimension(f"dim must be 1, 2 or 3, got {dim}")
    if dim == 1:
        p_v = 2.0
    elif dim == 2:
        if spec.beta is None or not (spec.beta > 0):
            raise InvalidExponent(
                f"dim 2 requires beta > 0, got {spec.beta!r}"
            )
        p_v = 2.0 + spec.beta
    else:
        p_v = float(dim)
    for part in (spec.v1, spec.v2):
        if isinstance(part, complex) or (
            isinstance(part, np.ndarray)
            and np.iscomplexobj(part)
            and np.any(np.abs(part.imag) > 0)
        ):
            raise ComplexPotential("potential parts must be real-valued")
    return replace(spec, p_v=p_v)


def well_potential(depth: float, radius: float) -> Callable[..., np.ndarray]:
    """Smooth (C^1) radial well of the given depth, vanishing beyond radius."""

    def fn(*axes: np.ndarray) -> np.ndarray:
        r = np.sqrt(sum(a**2 for a in axes))
        return np.where(r < radius, depth * np.cos(np.pi * r / (2 * radius)) ** 2, 0.0)

    return fn


def inverse_power_potential(
    strength: float, power: float, core: float
) -> Callable[..., np.ndarray]:
    """Truncated inverse power strength / (|x|^2 + core^2)^(power/2)."""

    def fn(*axes: np.ndarray) -> np.ndarray:
        r2 = sum(a**2 for a in axes)
        return strength / (r2 + core**2) ** (power / 2.0)

    return fn


def g_eps(u: ComplexField, eps: float) -> ComplexField:
    """Pointwise u / (|u|^2 + eps)^(1/2); at eps = 0 zeros map to 0."""
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    if not np.all(np.isfinite(u.values)):
        raise NonFiniteInput("field contains NaN or Inf entries")
    absq = np.abs(u.values) ** 2
    if eps == 0:
        denom = np.sqrt(absq)
        out = np.divide(
            u.values, denom, out=np.zeros_like(u.values), where=denom > 0
        )
    else:
        out = u.values / np.sqrt(absq + eps)
    return u.copy_with(out)


@dataclass(frozen=True)
class SaturatedSection:
    """Bounded section U with |U| <= 1 and U = u/|u| off the zero set."""

    values: ComplexField
    zero_mask: np.ndarray


def saturated_section(
    u: ComplexField, f: ComplexField, mu: float, zero_tol: float
) -> SaturatedSection:
    """Select the section associated to u under forcing f.

    Where |u| > zero_tol the section is u/|u|.  On the numerical zero set
    the stationarity balance i*mu*U = f is solved when |f| <= mu and
    clipped to unit modulus otherwise.
    """
    if u.grid != f.grid:
        raise GridMismatch("state and forcing live on different grids")
    if not (zero_tol > 0):
        raise ValueError(f"zero_tol must be positive, got {zero_tol}")
    absu = np.abs(u.values)
    zero_mask = absu <= zero_tol
    out = np.zeros_like(u.values)
    np.divide(u.values, absu, out=out, where=~zero_mask)
    absf = np.abs(f.values)
    balance = -1j * f.values / mu
    clipped = np.divide(
        -1j * f.values, absf, out=np.zeros_like(f.values), where=absf > 0
    )
    on_zero = np.where(absf <= mu, balance, clipped)
    out[zero_mask] = on_zero[zero_mask]
    return SaturatedSection(values=u.copy_with(out), zero_mask=zero_mask)


def _section_values(U) -> ComplexField:
    return U.values if isinstance(U, SaturatedSection) else U


def monotonicity_pairing(u1: ComplexField, U1, u2: ComplexField, U2) -> float:
    """Re integral of (U1 - U2) * conj(u1 - u2); nonnegative for valid sections."""
    U1 = _section_values(U1)
    U2 = _section_values(U2)
    for other in (U1, u2, U2):
        if other.grid != u1.grid:
            raise GridMismatch("all fields must share one grid")
    for U in (U1, U2):
        if np.abs(U.values).max(initial=0.0) > 1 + 1e-12:
            raise InvalidSection("section modulus exceeds 1")
    pair = (U1.values - U2.values) * np.conj(u1.values - u2.values)
    return float(np.real(pair.sum()) * u1.grid.cell_volume)


def potential_l2_bound_ratio(spec: PotentialSpec, u: ComplexField) -> float:
    """Ratio ||V u||_2 / (||v1||_inf + ||v2||_{p_V}) / ||u||_{H1}."""
    if spec.p_v is None:
        spec = validate_potential(spec, u.grid.dim)
    l2 = norm(u, "l2")
    if l2 == 0.0:
        raise ZeroField("ratio undefined for the zero field")
    v1, v2 = sample_potential(spec, u.grid)
    hN = u.grid.cell_volume
    pot_norm = float(np.abs(v1).max()) + float(
        (np.sum(np.abs(v2) ** spec.p_v) * hN) ** (1.0 / spec.p_v)
    )
    vu = u.copy_with((v1 + v2) * u.values)
    num = norm(vu, "l2")
    if pot_norm == 0.0:
        if num > 0.0:
            raise DegenerateInput("nonzero V*u with zero potential norm")
        return 0.0
    h1 = np.sqrt(l2**2 + norm(u, "h1semi") ** 2)
    return float(num / (pot_norm * h1))


@dataclass(frozen=True)
class ForcingSpec:
    """Time-dependent forcing f(t, x) in one of four shapes.

    zero            -- identically zero.
    separable       -- f(t, x) = amp(t) * profile(x).
    bangbang_capped -- separable with sup |f(t, .)| < mu for t >= t0.
    ramp_to_zero    -- ||f(t)||_2 = eps_star * (t0 - t)_+ times a fixed
                       unit-L2 profile.
    """

    kind: str
    grid: Grid
    profile: Optional[ComplexField] = None
    amp: Optional[Callable[[float], float]] = None
    t0: float = 0.0
    eps_star: float = 0.0
    mu_cap: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("zero", "separable", "bangbang_capped", "ramp_to_zero"):
            raise UnknownKind(f"unknown forcing kind {self.kind!r}")
        if self.kind != "zero":
            if self.profile is None:
                raise ValidationError(f"forcing kind {self.kind!r} needs a profile")
            if self.profile.grid != self.grid:
                raise GridMismatch("forcing profile grid mismatch")
        if self.kind == "ramp_to_zero":
            if self.eps_star < 0:
                raise ValidationError("eps_star must be nonnegative")
            l2 = norm(self.profile, "l2")
            if l2 == 0.0:
                raise ZeroField("ramp_to_zero needs a nonzero profile")
            object.__setattr__(
                self, "profile", self.profile.copy_with(self.profile.values / l2)
            )
        if self.kind == "bangbang_capped":
            if self.mu_cap is None:
                raise ValidationError("bangbang_capped needs the damping cap mu_cap")
            sup = norm(self.profile, "linf") * (
                abs(self.amp(self.t0)) if self.amp is not None else 1.0
            )
            if not (sup < self.mu_cap):
                raise ValidationError(
                    f"bangbang forcing sup {sup} must stay below mu = {self.mu_cap}"
                )


def zero_forcing(grid: Grid) -> ForcingSpec:
    return ForcingSpec(kind="zero", grid=grid)


def eval_forcing(spec: ForcingSpec, t: float) -> ComplexField:
    """Sample f(t, .) on the grid."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if spec.kind == "zero":
        return zeros(spec.grid)
    if spec.kind in ("separable", "bangbang_capped"):
        a = spec.amp(t) if spec.amp is not None else 1.0
        return spec.profile.copy_with(a * spec.profile.values)
    if spec.kind == "ramp_to_zero":
        a = spec.eps_star * max(spec.t0 - t, 0.0)
        return spec.profile.copy_with(a * spec.profile.values)
    raise UnknownKind(f"unknown forcing kind {spec.kind!r}")


@dataclass(frozen=True)
class ModelSpec:
    """Full model bundle: grid, damping strength, potential, forcing, u0."""

    grid: Grid
    mu: float
    potential: Optional[PotentialSpec]
    forcing: ForcingSpec
    u0: ComplexField = field(repr=False, default=None)

    def __post_init__(self):
        if self.mu < 0:
            raise ValidationError(f"mu must be nonnegative, got {self.mu}")
        if self.forcing.grid != self.grid:
            raise GridMismatch("forcing grid mismatch")
        if self.u0 is not None and self.u0.grid != self.grid:
            raise GridMismatch("initial state grid mismatch")

    def potential_samples(self) -> np.ndarray:
        v1, v2 = sample_potential(self.potential, self.grid)
        return v1 + v2
