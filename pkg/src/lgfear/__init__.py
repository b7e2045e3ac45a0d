"""Equilibrium, stability and bifurcation analysis of a fear-modified
Leslie-Gower predator-prey model with a strong Allee effect."""

from .errors import DomainError, NumericalError
from .model import (
    DimParams,
    FieldDerivatives,
    Params,
    State,
    field_derivatives,
    jacobian,
    jacobian_xy,
    nondimensionalize,
    rhs,
    rhs_param_gradient,
    rhs_xy,
)
from .equilibria import (
    Equilibrium,
    ExistenceRegime,
    all_equilibria,
    allee_competition_threshold,
    boundary_equilibria,
    critical_fear,
    discriminant,
    existence_regime,
    interior_equilibria,
)
from .stability import (
    BlowupReport,
    DivisorSingularity,
    LinearAnalysis,
    classify,
    divisor_flow,
    interior_trace_threshold,
    linear_analysis_at,
    origin_blowup,
    s_star,
    s_star_upper,
    s_zero,
)
from .bifurcation import (
    HopfReport,
    SotomayorCheck,
    TaylorCoeffs,
    cusp_check,
    first_lyapunov,
    fold_quadratic_coefficient,
    hopf_detect,
    saddle_node_type,
    sotomayor_saddle_node,
    taylor_at,
)
from .integrate import (
    Cycle,
    CycleSearch,
    IntegratorConfig,
    Trajectory,
    detect_limit_cycle,
    integrate,
    integrate_fixed_step,
    origin_attraction_probe,
)
from .analysis import SweepRow, analyze, sweep, sweep_rows_from_csv, sweep_to_csv
from .errata import ErrataEntry, errata_entries, errata_report

__all__ = [
    "DomainError",
    "NumericalError",
    "DimParams",
    "FieldDerivatives",
    "Params",
    "State",
    "field_derivatives",
    "jacobian",
    "jacobian_xy",
    "nondimensionalize",
    "rhs",
    "rhs_param_gradient",
    "rhs_xy",
    "Equilibrium",
    "ExistenceRegime",
    "all_equilibria",
    "allee_competition_threshold",
    "boundary_equilibria",
    "critical_fear",
    "discriminant",
    "existence_regime",
    "interior_equilibria",
    "BlowupReport",
    "DivisorSingularity",
    "LinearAnalysis",
    "classify",
    "divisor_flow",
    "interior_trace_threshold",
    "linear_analysis_at",
    "origin_blowup",
    "s_star",
    "s_star_upper",
    "s_zero",
    "HopfReport",
    "SotomayorCheck",
    "TaylorCoeffs",
    "cusp_check",
    "first_lyapunov",
    "fold_quadratic_coefficient",
    "hopf_detect",
    "saddle_node_type",
    "sotomayor_saddle_node",
    "taylor_at",
    "Cycle",
    "CycleSearch",
    "IntegratorConfig",
    "Trajectory",
    "detect_limit_cycle",
    "integrate",
    "integrate_fixed_step",
    "origin_attraction_probe",
    "SweepRow",
    "analyze",
    "sweep",
    "sweep_rows_from_csv",
    "sweep_to_csv",
    "ErrataEntry",
    "errata_entries",
    "errata_report",
]
