import numpy as np
import pytest

from satnls.errors import GridMismatch, InvalidDimension, InvalidSize, NonFiniteInput
from satnls.grid import (
    ComplexField,
    boundary_mass_fraction,
    field_from_function,
    inner_l2,
    laplacian,
    make_grid,
    norm,
    zeros,
)


def random_field(grid, rng):
    vals = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    return ComplexField(grid, vals)


def test_make_grid_validation():
    with pytest.raises(InvalidDimension):
        make_grid(4, 1.0, 32)
    with pytest.raises(InvalidSize):
        make_grid(1, -1.0, 32)
    with pytest.raises(InvalidSize):
        make_grid(1, 1.0, 4)


def test_grid_geometry():
    g = make_grid(1, 2.0, 15)
    assert g.spacing == pytest.approx(4.0 / 16)
    x = g.axis_coordinates()
    assert len(x) == 15
    assert x[0] == pytest.approx(-2.0 + g.spacing)
    assert x[-1] == pytest.approx(2.0 - g.spacing)


def test_field_shape_and_finiteness():
    g = make_grid(2, 1.0, 8)
    with pytest.raises(GridMismatch):
        ComplexField(g, np.zeros((8,)))
    bad = np.zeros((8, 8))
    bad[0, 0] = np.nan
    with pytest.raises(NonFiniteInput):
        ComplexField(g, bad)


def test_norms_sine_closed_forms():
    # sin(pi*y) on (0, 1), realized on the box [-1/2, 1/2]
    g = make_grid(1, 0.5, 1024)
    u = field_from_function(g, lambda x: np.sin(np.pi * (x + 0.5)))
    assert norm(u, "l2") == pytest.approx(np.sqrt(0.5), abs=1e-3)
    assert norm(u, "l1") == pytest.approx(2.0 / np.pi, abs=1e-3)
    assert norm(u, "linf") == pytest.approx(1.0, abs=1e-4)
    assert norm(u, "h1semi") == pytest.approx(np.pi * np.sqrt(0.5), abs=1e-2)


def test_norm_homogeneity_and_triangle():
    rng = np.random.default_rng(0)
    g = make_grid(2, 1.5, 16)
    for _ in range(20):
        u = random_field(g, rng)
        v = random_field(g, rng)
        c = rng.standard_normal() + 1j * rng.standard_normal()
        for kind in ("l2", "l1", "linf", "h1semi"):
            cu = u.copy_with(c * u.values)
            assert norm(cu, kind) == pytest.approx(abs(c) * norm(u, kind), rel=1e-12)
            s = u.copy_with(u.values + v.values)
            assert norm(s, kind) <= norm(u, kind) + norm(v, kind) + 1e-12


def test_zero_field_norms():
    g = make_grid(3, 1.0, 8)
    z = zeros(g)
    for kind in ("l2", "l1", "linf", "h1semi"):
        assert norm(z, kind) == 0.0


def test_inner_l2_definition():
    rng = np.random.default_rng(1)
    g = make_grid(1, 1.0, 64)
    u = random_field(g, rng)
    assert inner_l2(u, u) == pytest.approx(norm(u, "l2") ** 2, rel=1e-12)
    iu = u.copy_with(1j * u.values)
    assert abs(inner_l2(u, iu)) <= 1e-12 * norm(u, "l2") ** 2


def test_laplacian_self_adjoint_negative():
    rng = np.random.default_rng(2)
    for dim in (1, 2):
        g = make_grid(dim, 1.0, 12)
        for _ in range(10):
            u = random_field(g, rng)
            v = random_field(g, rng)
            lhs = inner_l2(laplacian(u), v)
            rhs = inner_l2(u, laplacian(v))
            scale = norm(u, "l2") * norm(v, "l2")
            assert abs(lhs - rhs) <= 1e-10 * scale / g.spacing**2
            assert inner_l2(laplacian(u), u) <= 1e-12


def test_laplacian_matches_h1_seminorm():
    # -(Lap u, u) equals the squared forward-difference seminorm
    rng = np.random.default_rng(3)
    g = make_grid(1, 1.0, 48)
    u = random_field(g, rng)
    assert -inner_l2(laplacian(u), u) == pytest.approx(
        norm(u, "h1semi") ** 2, rel=1e-10
    )


def test_boundary_mass_fraction_uniform():
    g = make_grid(1, 1.0, 100)
    u = ComplexField(g, np.ones(100, dtype=complex))
    assert boundary_mass_fraction(u, 10) == pytest.approx(0.2)
    assert boundary_mass_fraction(zeros(g), 10) == 0.0
    with pytest.raises(InvalidSize):
        boundary_mass_fraction(u, 50)


def test_boundary_mass_fraction_compact_support():
    g = make_grid(1, 10.0, 256)
    u = field_from_function(g, lambda x: np.exp(-(x**2) * 8))
    assert boundary_mass_fraction(u, 12) < 1e-10
