# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest

from memheat.analysis import (
    EnergyTrace,
    TracePoint,
    dissipation_residual,
    energy,
    energy_derivative,
    energy_integral,
    is_monotone,
    k0_ratio,
)
from memheat.analysis.energy import AnalysisError
from memheat.discretization import build_mesh, grad_sq_norm, initial_field
from memheat.exceptions import Indeterminate, InvalidParameter
from memheat.kernel import certify_g2, make_kernel
from memheat.solver import MatrixA, SolverConfig, run

POWER_LAW = make_kernel("power_law", {"a": 1.0, "nu": 3.0})
MEMORYLESS = make_kernel("memoryless")
IDENTITY = MatrixA("identity", 1)


def exact_decay_trace(t, e):
    """Memoryless trace whose dissipation closes the identity per step."""
    d = np.zeros_like(e)
    d[1:] = -np.diff(e) / np.diff(t)
    return EnergyTrace(t, e, dissipation=d)


def sine_run(cells, dt, t_final, kernel=MEMORYLESS):
    mesh = build_mesh(1, 1.0, cells)
    config = SolverConfig(m=2.0, dt=dt, t_final=t_final)
    return run(initial_field(mesh), config, kernel, IDENTITY)


def test_energy_at_zero():
    assert energy(TracePoint(0.0, 0.0, 2.0)) == 1.0
    assert energy(TracePoint(0.0, 0.0, 0.0)) == 0.0


def test_energy_of_sine():
    u0 = initial_field(build_mesh(1, 1.0, 64))
    point = TracePoint(0.0, 0.0, grad_sq_norm(u0))
    assert energy(point) == pytest.approx(math.pi**2 / 4.0, rel=1e-3)


def test_energy_memory_terms():
    assert energy(TracePoint(1.0, 0.4, 2.0, 0.25)) == pytest.approx(0.95)
    kernel = make_kernel("pure_exp", {"a": 0.5, "b": 1.0})
    int_g = 0.5 * (1.0 - math.exp(-1.0))
    expected = 0.2 + 0.5 * (1.0 - int_g) * 2.0
    assert energy(TracePoint(1.0, 0.4, 2.0), kernel) == pytest.approx(
        expected
    )


def test_energy_derivative():
    t = np.array([0.0, 1.0, 3.0, 4.0])
    slope = energy_derivative(EnergyTrace(t, 10.0 - 2.0 * t))
    assert np.allclose(slope, -2.0)
    with pytest.raises(InvalidParameter) as exc:
        energy_derivative(EnergyTrace([0.0], [1.0]))
    assert exc.value.args[0] == AnalysisError.TOO_FEW.format(
        "energy_derivative", 2, 1
    )


def test_dissipation_identity_holds_exactly():
    t = np.concatenate([[0.0], np.geomspace(0.01, 5.0, 60)])
    result = dissipation_residual(exact_decay_trace(t, np.exp(-2.0 * t)))
    assert result.absolute <= 1e-12
    assert result.ratio is None


def test_dissipation_residual_of_zero_trace():
    result = dissipation_residual(EnergyTrace(np.arange(5.0), np.zeros(5)))
    assert result.absolute == 0.0
    assert result.relative == 0.0


def test_dissipation_residual_needs_three_stamps():
    with pytest.raises(InvalidParameter) as exc:
        dissipation_residual(EnergyTrace([0.0, 1.0], [1.0, 0.5]))
    assert exc.value.args[0] == AnalysisError.TOO_FEW.format(
        "dissipation_residual", 3, 2
    )


def test_heat_dissipation_residual():
    result = dissipation_residual(sine_run(64, 1e-4, 0.02))
    # backward Euler leaves 1/2 lambda dt of |E'|, about 5e-4
    assert result.relative <= 1e-3


def test_heat_dissipation_residual_is_first_order():
    coarse = sine_run(32, 2e-3, 0.1)
    fine = sine_run(64, 1e-3, 0.1)
    assert dissipation_residual(coarse, fine).ratio >= 1.8


def test_memory_dissipation_residual_decreases():
    coarse = sine_run(16, 0.02, 1.0, POWER_LAW)
    fine = sine_run(32, 0.01, 1.0, POWER_LAW)
    assert dissipation_residual(coarse, fine).ratio >= 1.5


def test_k0_ratio():
    certificate = certify_g2(POWER_LAW)
    t = np.linspace(0.0, 10.0, 101)
    e = (1.0 + t) ** -3
    modulus = 0.1 * t * e
    trace = EnergyTrace(t, e, g_circ_grad=modulus)
    result = k0_ratio(trace, certificate)

    slope = energy_derivative(trace)
    expected = np.max(3.0 * modulus / (-slope) ** 0.6)
    assert result.k0 == pytest.approx(expected)
    assert result.excluded == 0
    assert result.considered == 101


def test_k0_ratio_exclusions():
    certificate = certify_g2(POWER_LAW)
    trace = EnergyTrace(
        np.arange(5.0),
        [1.0, 0.5, 0.5, 0.5, 0.25],
        g_circ_grad=[0.0, 0.1, 0.1, 0.1, 0.1],
        certificate=certificate,
    )
    result = k0_ratio(trace)
    assert result.excluded == 1
    assert result.considered == 4


def test_k0_ratio_at_rest():
    trace = EnergyTrace(np.arange(4.0), np.zeros(4))
    with pytest.raises(Indeterminate) as exc:
        k0_ratio(trace, certify_g2(POWER_LAW))
    assert exc.value.args[0] == AnalysisError.ALL_EXCLUDED.format(4)
    with pytest.raises(InvalidParameter) as exc:
        k0_ratio(trace)
    assert exc.value.args[0] == AnalysisError.NO_CERTIFICATE.format(
        "k0_ratio"
    )


def test_energy_integral():
    t = np.linspace(0.0, 100.0, 10001)
    result = energy_integral(EnergyTrace(t, (1.0 + t) ** -3))
    assert result.total == pytest.approx(0.5 * (1.0 - 101.0**-2), rel=1e-4)
    assert result.half == pytest.approx(0.5 * (1.0 - 51.0**-2), rel=1e-4)
    assert 0.0 < result.tail_increment < 1e-3


def test_energy_integral_of_zero_trace():
    result = energy_integral(EnergyTrace(np.arange(3.0), np.zeros(3)))
    assert tuple(result) == (0.0, 0.0, 0.0)


def test_is_monotone():
    t = np.arange(4.0)
    assert is_monotone(EnergyTrace(t, [1.0, 0.5, 0.5, 0.1]))
    assert is_monotone(EnergyTrace(t, [1.0, 0.5, 0.5 + 1e-11, 0.1]))
    assert not is_monotone(EnergyTrace(t, [1.0, 0.5, 0.6, 0.1]))
