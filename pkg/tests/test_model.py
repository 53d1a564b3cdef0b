import numpy as np
import pytest

from satnls.errors import (
    ComplexPotential,
    GridMismatch,
    InvalidExponent,
    InvalidSection,
    UnknownKind,
    ValidationError,
    ZeroField,
)
from satnls.grid import ComplexField, field_from_function, make_grid, norm, zeros
from satnls.model import (
    ForcingSpec,
    ModelSpec,
    PotentialSpec,
    eval_forcing,
    g_eps,
    monotonicity_pairing,
    potential_l2_bound_ratio,
    sample_potential,
    saturated_section,
    validate_potential,
    well_potential,
    zero_forcing,
)


def random_field(grid, rng):
    vals = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    return ComplexField(grid, vals)


class TestPotential:
    def test_exponent_rule(self):
        assert validate_potential(PotentialSpec(), 1).p_v == 2.0
        assert validate_potential(PotentialSpec(beta=0.5), 2).p_v == 2.5
        assert validate_potential(PotentialSpec(), 3).p_v == 3.0

    def test_dim2_requires_beta(self):
        with pytest.raises(InvalidExponent):
            validate_potential(PotentialSpec(), 2)
        with pytest.raises(InvalidExponent):
            validate_potential(PotentialSpec(beta=-1.0), 2)

    def test_complex_potential_rejected(self):
        with pytest.raises(ComplexPotential):
            validate_potential(PotentialSpec(v1=1.0 + 2.0j), 1)
        g = make_grid(1, 1.0, 16)
        with pytest.raises(ComplexPotential):
            sample_potential(PotentialSpec(v1=np.full(16, 1j)), g)

    def test_sampling_shapes(self):
        g = make_grid(2, 1.0, 8)
        v1, v2 = sample_potential(
            PotentialSpec(v1=well_potential(-2.0, 0.5), v2=1.5), g
        )
        assert v1.shape == g.shape and v2.shape == g.shape
        assert np.all(v2 == 1.5)
        assert v1.min() < 0 and v1.max() == 0.0

    def test_constant_potential_ratio_bounded(self):
        rng = np.random.default_rng(4)
        g = make_grid(1, 1.0, 64)
        spec = validate_potential(PotentialSpec(v1=2.5), 1)
        for _ in range(20):
            u = random_field(g, rng)
            assert potential_l2_bound_ratio(spec, u) <= 1.0 + 1e-12

    def test_ratio_zero_field_raises(self):
        g = make_grid(1, 1.0, 16)
        spec = validate_potential(PotentialSpec(v1=1.0), 1)
        with pytest.raises(ZeroField):
            potential_l2_bound_ratio(spec, zeros(g))


class TestRegularization:
    def test_g_eps_bounded_by_one(self):
        rng = np.random.default_rng(5)
        g = make_grid(1, 1.0, 64)
        for eps in (1e-2, 1e-8):
            u = random_field(g, rng)
            w = g_eps(u, eps)
            assert np.abs(w.values).max() <= 1.0

    def test_g_eps_zero_eps_is_unit_phase(self):
        g = make_grid(1, 1.0, 16)
        vals = np.zeros(16, dtype=complex)
        vals[3] = 3.0 + 4.0j
        w = g_eps(ComplexField(g, vals), 0.0)
        assert w.values[3] == pytest.approx(0.6 + 0.8j)
        assert w.values[0] == 0.0

    def test_g_eps_converges_off_zero_set(self):
        g = make_grid(1, 1.0, 16)
        u = ComplexField(g, np.full(16, 2.0 + 0j))
        for eps in (1e-2, 1e-4, 1e-8):
            err = np.abs(g_eps(u, eps).values - 1.0).max()
            assert err <= eps / (2 * 4.0)


class TestSaturatedSection:
    def test_off_zero_set_unit_phase(self):
        g = make_grid(1, 1.0, 16)
        vals = np.full(16, 1.0 + 1.0j)
        sec = saturated_section(ComplexField(g, vals), zeros(g), 1.0, 1e-12)
        assert np.allclose(np.abs(sec.values.values), 1.0)
        assert not sec.zero_mask.any()

    def test_zero_set_balance_when_forcing_weak(self):
        g = make_grid(1, 1.0, 16)
        f = ComplexField(g, np.full(16, 0.5 + 0j))
        sec = saturated_section(zeros(g), f, 1.0, 1e-12)
        # i*mu*U = f  =>  U = -i*f/mu
        assert np.allclose(sec.values.values, -0.5j)
        assert sec.zero_mask.all()

    def test_zero_set_clip_when_forcing_strong(self):
        g = make_grid(1, 1.0, 16)
        f = ComplexField(g, np.full(16, 2.0 + 0j))
        sec = saturated_section(zeros(g), f, 1.0, 1e-12)
        assert np.allclose(np.abs(sec.values.values), 1.0)

    def test_grid_mismatch(self):
        with pytest.raises(GridMismatch):
            saturated_section(
                zeros(make_grid(1, 1.0, 16)), zeros(make_grid(1, 1.0, 32)), 1.0, 1e-12
            )


class TestMonotonicityPairing:
    def test_random_sections_nonnegative(self):
        rng = np.random.default_rng(6)
        g = make_grid(1, 1.0, 32)
        f = zeros(g)
        for _ in range(200):
            u1 = random_field(g, rng)
            u2 = random_field(g, rng)
            s1 = saturated_section(u1, f, 1.0, 1e-12)
            s2 = saturated_section(u2, f, 1.0, 1e-12)
            d = u1.copy_with(u1.values - u2.values)
            assert monotonicity_pairing(u1, s1, u2, s2) >= -1e-12 * norm(d, "l1")

    def test_g_eps_sections_nonnegative(self):
        rng = np.random.default_rng(7)
        g = make_grid(1, 1.0, 32)
        for eps in (1e-2, 1e-8):
            for _ in range(100):
                u1 = random_field(g, rng)
                u2 = random_field(g, rng)
                p = monotonicity_pairing(u1, g_eps(u1, eps), u2, g_eps(u2, eps))
                assert p >= -1e-14

    def test_invalid_section_rejected(self):
        g = make_grid(1, 1.0, 16)
        u = ComplexField(g, np.ones(16, dtype=complex))
        big = ComplexField(g, np.full(16, 2.0 + 0j))
        with pytest.raises(InvalidSection):
            monotonicity_pairing(u, big, zeros(g), zeros(g))


class TestForcing:
    def test_zero_forcing(self):
        g = make_grid(1, 1.0, 16)
        f = eval_forcing(zero_forcing(g), 0.3)
        assert not np.any(f.values)

    def test_unknown_kind(self):
        g = make_grid(1, 1.0, 16)
        with pytest.raises(UnknownKind):
            ForcingSpec(kind="sawtooth", grid=g)

    def test_separable(self):
        g = make_grid(1, 1.0, 32)
        prof = field_from_function(g, lambda x: np.cos(np.pi * x / 2))
        spec = ForcingSpec(
            kind="separable", grid=g, profile=prof, amp=lambda t: np.exp(-t)
        )
        f = eval_forcing(spec, 1.0)
        assert np.allclose(f.values, np.exp(-1.0) * prof.values)

    def test_bangbang_cap_enforced(self):
        g = make_grid(1, 1.0, 32)
        prof = field_from_function(g, lambda x: 1.2 * np.cos(np.pi * x / 2))
        with pytest.raises(ValidationError):
            ForcingSpec(kind="bangbang_capped", grid=g, profile=prof, mu_cap=1.0)

    def test_ramp_to_zero(self):
        g = make_grid(1, 1.0, 32)
        prof = field_from_function(g, lambda x: np.cos(np.pi * x / 2))
        spec = ForcingSpec(
            kind="ramp_to_zero", grid=g, profile=prof, t0=0.5, eps_star=0.1
        )
        assert norm(eval_forcing(spec, 0.0), "l2") == pytest.approx(0.05, rel=1e-12)
        assert norm(eval_forcing(spec, 0.25), "l2") == pytest.approx(0.025, rel=1e-12)
        assert norm(eval_forcing(spec, 0.8), "l2") == 0.0


class TestModelSpec:
    def test_negative_mu_rejected(self):
        g = make_grid(1, 1.0, 16)
        with pytest.raises(ValidationError):
            ModelSpec(grid=g, mu=-1.0, potential=None, forcing=zero_forcing(g))

    def test_zero_mu_allowed(self):
        g = make_grid(1, 1.0, 16)
        m = ModelSpec(grid=g, mu=0.0, potential=None, forcing=zero_forcing(g))
        assert m.mu == 0.0
