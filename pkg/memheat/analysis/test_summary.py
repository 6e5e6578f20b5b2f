# -*- coding: utf-8 -*-
import copy
import math

import numpy as np
import pytest

from memheat.analysis import EnergyTrace, summarize, validate_summary
from memheat.discretization import build_mesh, initial_field
from memheat.exceptions import ConfigInvalid
from memheat.kernel import certify_g2, make_kernel
from memheat.solver import MatrixA, SolverConfig, run
from memheat.utils import jsonn

POWER_LAW = make_kernel("power_law", {"a": 1.0, "nu": 3.0})


def power_law_trace():
    t = np.linspace(0.0, 20.0, 201)
    return EnergyTrace(
        t,
        (1.0 + t) ** -3,
        g_circ_grad=0.01 * t * (1.0 + t) ** -3,
        kernel=POWER_LAW,
        certificate=certify_g2(POWER_LAW),
    )


def test_summary_of_synthetic_power_law():
    summary = summarize(power_law_trace(), preset="synthetic")
    assert summary["preset"] == "synthetic"
    assert summary["window"] == [10.0, 20.0]
    assert summary["kernel"]["family"] == "power_law"
    assert summary["kernel"]["l"] == pytest.approx(0.5)
    assert summary["energy"]["E0"] == 1.0
    assert summary["envelope"]["kind"] == "OptimalPolynomial"
    assert summary["envelope"]["exponent"] == pytest.approx(-3.0)
    assert summary["envelope"]["margin"] >= 0.0
    assert summary["fit"]["model"] == "power_law"
    assert summary["fit"]["params"]["exponent"] == pytest.approx(-3.0)
    checks = summary["checks"]
    assert checks["monotone"] is True
    assert checks["integrable"] is True
    assert checks["k0"] > 0.0
    assert checks["k0_excluded"] == 0
    assert checks["dissipation_ratio"] is None
    assert checks["weak_residual"] is None


def test_summary_is_deterministic():
    first = jsonn.dumps(summarize(power_law_trace()))
    second = jsonn.dumps(summarize(power_law_trace()))
    assert first == second


def test_summary_of_heat_run():
    mesh = build_mesh(1, 1.0, 32)
    config = SolverConfig(m=2.0, dt=1e-3, t_final=0.2)
    kernel = make_kernel("memoryless")
    trace = run(initial_field(mesh), config, kernel, MatrixA("identity", 1))
    summary = summarize(trace, preset="heat-check", weak_residual=0.0)
    assert summary["envelope"]["kind"] == "Exponential"
    assert summary["fit"]["model"] == "stretched_exp"
    rate = summary["fit"]["params"]["rate"]
    assert rate == pytest.approx(2.0 * math.pi**2, rel=2e-2)
    assert summary["checks"]["integrable"] is None
    assert summary["checks"]["dissipation_residual"] < 1e-2
    assert summary["checks"]["weak_residual"] == 0.0


def test_validate_summary_rejects_unknown_keys():
    summary = copy.deepcopy(summarize(power_law_trace()))
    summary["checks"]["extra"] = 1.0
    with pytest.raises(ConfigInvalid) as exc:
        validate_summary(summary)
    assert exc.value.args[0].startswith("Summary: summary does not match")


def test_summary_without_envelope():
    t = np.linspace(0.0, 20.0, 201)
    trace = EnergyTrace(
        t,
        np.where(t < 5.0, (1.0 + t) ** -3, 0.0),
        kernel=POWER_LAW,
        certificate=certify_g2(POWER_LAW),
    )
    summary = summarize(trace)
    assert summary["envelope"] is None
    assert summary["fit"] is None
    assert validate_summary(summary) is summary
