"""Numerical laboratory for a damped wave equation with slowly decaying data.

The package measures decay rates of the distance between solutions of

    u_tt - u_xx + u_t + (f(u))_x = 0,   f(u) = a u + (b/2) u^2 + (c/6) u^3

and a family of closed-form asymptotic profiles, for initial data whose
spatial tails decay like |x|^(-gamma) with gamma in (1, 2].  It provides the
profiles, the exact mode-wise solution kernels, three independent
integrators, rate-fitting utilities and a command line around them.
"""

from .grids import GridSpec, default_halfwidth, geometric_snapshot_times
from .kernels import (KINDS, MomentDecay, SpectralGrid, U_apply, apply_G,
                      convolve_G0_moment_test, zero_mean_tail_field)
from .model import (CalibrationError, InitialData, ModelParams, TailSpec,
                    balanced_tail, f_flux, g_nonlinear, make_calibrated_data,
                    mass, smallness, tail_limits, z0_profile)
from .profiles import NuConstants, ProfileSet, gamma_fn
from .solver import (DivergenceError, Snapshot, Trajectory, TruncationError,
                     export_csv, jinxin_dt_bound, make_profile_trajectory,
                     pde_residual, read_snapshots, run_damped_wave, run_jinxin,
                     solve_auxiliary, write_snapshots)
from .analysis import (CLAIM_ANCHORS, NormSeries, RateFit, Verdict,
                       bound_sandwich, burgers_residual_check,
                       difference_norms, fit_rate, gamma_identity_residuals,
                       jinxin_cross_check, kernel_estimate_check,
                       moment_lemma_check, representation_check,
                       u_operator_bound_check, verify_cor_1_3,
                       verify_prop_5_1, verify_theorem_1_1, verify_theorem_1_2)

__version__ = "0.1.0"

__all__ = [
    "GridSpec", "default_halfwidth", "geometric_snapshot_times",
    "KINDS", "MomentDecay", "SpectralGrid", "U_apply", "apply_G",
    "convolve_G0_moment_test", "zero_mean_tail_field",
    "CalibrationError", "InitialData", "ModelParams", "TailSpec",
    "balanced_tail", "f_flux", "g_nonlinear", "make_calibrated_data",
    "mass", "smallness", "tail_limits", "z0_profile",
    "NuConstants", "ProfileSet", "gamma_fn",
    "DivergenceError", "Snapshot", "Trajectory", "TruncationError",
    "export_csv", "jinxin_dt_bound", "make_profile_trajectory", "pde_residual",
    "read_snapshots", "run_damped_wave", "run_jinxin", "solve_auxiliary",
    "write_snapshots",
    "CLAIM_ANCHORS", "NormSeries", "RateFit", "Verdict", "bound_sandwich",
    "burgers_residual_check", "difference_norms", "fit_rate",
    "gamma_identity_residuals", "jinxin_cross_check", "kernel_estimate_check",
    "moment_lemma_check", "representation_check", "u_operator_bound_check",
    "verify_cor_1_3", "verify_prop_5_1", "verify_theorem_1_1",
    "verify_theorem_1_2",
    "__version__",
]
