"""Singularity diagnostics for compressible flows under external forces."""

from .criteria import (CheminConstant, CriterionReport, SiderisSetup,
                       chemin_constant, damped_check,
                       pressureless_rotation_pointwise, rate_threshold,
                       rotation_check, sideris_check, theorem21_check)
from .errors import BlowupWatchError
from .exact import (AffineParams, AffineTrajectory, VortexParams,
                    affine_integrate, affine_rebase, affine_reference_state,
                    theorem22_search, vortex_build, vortex_model)
from .fields import FluidState, ForceSpec, GasModel, Grid
from .moments import (MomentSet, compute_moments, holder_check,
                      time_series_identities)
from .snapshots import read_state, write_state
from .solver import (BlowupEvent, RunResult, SolverConfig,
                     decay_surface_report, run, step, write_run_directory)

__version__ = "0.1.0"

__all__ = [
    "AffineParams", "AffineTrajectory", "BlowupEvent", "BlowupWatchError",
    "CheminConstant", "CriterionReport", "FluidState", "ForceSpec",
    "GasModel", "Grid", "MomentSet", "RunResult", "SiderisSetup",
    "SolverConfig", "VortexParams", "affine_integrate", "affine_rebase",
    "affine_reference_state", "chemin_constant", "compute_moments",
    "damped_check", "decay_surface_report", "holder_check",
    "pressureless_rotation_pointwise", "rate_threshold", "read_state",
    "rotation_check", "run", "sideris_check", "step", "theorem21_check",
    "theorem22_search", "time_series_identities", "vortex_build",
    "vortex_model", "write_run_directory", "write_state",
]
