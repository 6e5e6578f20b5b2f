# -*- coding: utf-8 -*-
import dataclasses

import numpy as np
import pytest

from memheat.discretization import Field, build_mesh, initial_field, zeros
from memheat.exceptions import InvalidParameter
from memheat.kernel import make_kernel
from memheat.solver import MatrixA, SolverConfig, run, weak_residual
from memheat.solver.weak_form import default_test_functions

MEMORYLESS = make_kernel("memoryless")
PURE_EXP = make_kernel("pure_exp", {"a": 0.5, "b": 1.0})
IDENTITY = MatrixA("identity", 1)


def heat_trace(cells, dt, t_final, kernel=MEMORYLESS):
    mesh = build_mesh(1, 1.0, cells)
    config = SolverConfig(
        m=2.0, dt=dt, t_final=t_final, keep_snapshots=True
    )
    return run(initial_field(mesh), config, kernel, IDENTITY)


def test_default_test_functions():
    assert default_test_functions(1) == [(1,), (2,), (3,), (4,)]
    assert default_test_functions(2) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_zero_solution():
    mesh = build_mesh(1, 1.0, 16)
    config = SolverConfig(m=3.0, dt=0.1, t_final=0.5, keep_snapshots=True)
    trace = run(zeros(mesh), config, PURE_EXP, IDENTITY)
    assert weak_residual(trace) == 0.0


def test_needs_snapshots():
    trace = run(
        initial_field(build_mesh(1, 1.0, 16)),
        SolverConfig(dt=0.1, t_final=0.2),
        MEMORYLESS,
        IDENTITY,
    )
    with pytest.raises(InvalidParameter):
        weak_residual(trace)


def test_single_stamp():
    assert weak_residual(heat_trace(16, 0.1, 0.0)) == 0.0


def test_heat_residual_is_first_order():
    coarse = weak_residual(heat_trace(32, 1e-3, 0.05))
    fine = weak_residual(heat_trace(64, 5e-4, 0.05))
    assert coarse > 0.0
    assert coarse / fine >= 1.8


def test_memory_residual_decreases_with_dt():
    coarse = weak_residual(heat_trace(32, 2e-3, 0.1, PURE_EXP))
    fine = weak_residual(heat_trace(32, 1e-3, 0.1, PURE_EXP))
    assert coarse / fine >= 1.6


def test_noise_is_detected():
    trace = heat_trace(32, 1e-4, 0.01)
    clean = weak_residual(trace)
    rng = np.random.default_rng(11)
    noisy = [trace.snapshots[0]]
    for s in trace.snapshots[1:]:
        noise = 0.01 * rng.standard_normal(s.values.shape)
        noisy.append(Field(s.mesh, s.values * (1.0 + noise)))
    perturbed = dataclasses.replace(trace, snapshots=noisy)
    assert weak_residual(perturbed) >= 10.0 * clean
