"""Inverse spectral solver for even diagonal canonical systems.

Recovers the diagonal Hamiltonian of a canonical system from the
trigonometric moments of a periodized spectral measure, and quantifies
weak-star convergence of the recovered step functions along a ladder of
periods.
"""

from ._core import (
    BreakdownError,
    Density,
    KernelTransform,
    Measure,
    Moments,
    QuadratureError,
    StepFunction,
    ValidationError,
    compute_moments,
    convolution_residual,
    dense_oracle_solve,
    eligibility,
    h11_from_kernel,
    h22,
    kernel_transform,
    kernel_value_at_zero,
    parse_density,
    psi_T,
    pw_diagnostic,
    recover,
    recover_from_moments,
    run_ladder,
    solve_nested,
    step_identity_max_dev,
    szego,
)

__all__ = [
    "BreakdownError",
    "Density",
    "KernelTransform",
    "Measure",
    "Moments",
    "QuadratureError",
    "StepFunction",
    "ValidationError",
    "compute_moments",
    "convolution_residual",
    "dense_oracle_solve",
    "eligibility",
    "h11_from_kernel",
    "h22",
    "kernel_transform",
    "kernel_value_at_zero",
    "parse_density",
    "psi_T",
    "pw_diagnostic",
    "recover",
    "recover_from_moments",
    "run_ladder",
    "solve_nested",
    "step_identity_max_dev",
    "szego",
]
