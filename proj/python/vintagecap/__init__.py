"""Vintage capital equilibrium toolkit."""

from ._core import (
    AgeGrid,
    CoefficientProfile,
    Cost,
    EquilibriumSolution,
    ModelParams,
    PeakInfo,
    ResidualReport,
    Revenue,
    SStarResult,
    Trajectory,
    F_of_eta,
    apply_T,
    closed_form_eta,
    costate_field,
    discounted_return,
    lq_coefficients,
    lq_profiles,
    peak_age,
    power_eta,
    primitive_weak_norm,
    s_star_analytic,
    simulate,
    solve_equilibrium,
    theta_of_eta,
)

__all__ = [
    "AgeGrid",
    "CoefficientProfile",
    "Cost",
    "EquilibriumSolution",
    "ModelParams",
    "PeakInfo",
    "ResidualReport",
    "Revenue",
    "SStarResult",
    "Trajectory",
    "F_of_eta",
    "apply_T",
    "closed_form_eta",
    "costate_field",
    "discounted_return",
    "lq_coefficients",
    "lq_profiles",
    "peak_age",
    "power_eta",
    "primitive_weak_norm",
    "s_star_analytic",
    "simulate",
    "solve_equilibrium",
    "theta_of_eta",
]
