# -*- coding: utf-8 -*-
from memheat.solver.matrix_a import AMode, MatrixA, matrix_a_from_config
from memheat.solver.newton import NewtonResult, damped_newton
from memheat.solver.stepper import (
    MemoryMode,
    RunState,
    SolverConfig,
    run,
    run_from_config,
    solver_config_from_run,
    step,
    validate_hypotheses,
)
from memheat.solver.time_mesh import TimeMesh, parse_time_mesh, time_grid
from memheat.solver.weak_form import weak_residual

__all__ = [
    "AMode",
    "MatrixA",
    "MemoryMode",
    "NewtonResult",
    "RunState",
    "SolverConfig",
    "TimeMesh",
    "damped_newton",
    "matrix_a_from_config",
    "parse_time_mesh",
    "run",
    "run_from_config",
    "solver_config_from_run",
    "step",
    "time_grid",
    "validate_hypotheses",
    "weak_residual",
]
