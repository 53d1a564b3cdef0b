"""Simulator and verification harness for the damped Schrodinger equation
with saturating absorption, on Dirichlet boxes in one to three dimensions.
"""

from .diagnostics import (
    BoundCurveParams,
    DiagSeries,
    a_priori_check,
    bound_curve,
    continuous_dependence_check,
    extinction_time,
    fit_decay_constant,
    gn_ratio,
    mass_balance_residual,
    stabilization_check,
)
from .grid import (
    ComplexField,
    Grid,
    boundary_mass_fraction,
    field_from_function,
    inner_l2,
    laplacian,
    make_grid,
    norm,
    zeros,
)
from .integrators import (
    SimState,
    SolverConfig,
    backward_euler_step,
    cross_validate,
    damping_substep,
    linear_half_step,
    run,
    strang_step,
)
from .model import (
    ForcingSpec,
    ModelSpec,
    PotentialSpec,
    SaturatedSection,
    eval_forcing,
    g_eps,
    monotonicity_pairing,
    potential_l2_bound_ratio,
    sample_potential,
    saturated_section,
    validate_potential,
    zero_forcing,
)
from .rnp import (
    arctan_counterexample_sep,
    mollify,
    separation_profile,
    y0_norm,
    yn_axiom_check,
    yn_norm,
)
from .scenarios import (
    Expectation,
    Scenario,
    bump_field,
    catalog,
    gaussian_field,
    get_scenario,
    h1_growth_check,
    run_scenario,
)

__version__ = "0.1.0"
