# -*- coding: utf-8 -*-
import functools
import math
from dataclasses import replace

import numpy as np
import pytest

from memheat.analysis.energy import dissipation_residual, is_monotone
from memheat.analysis.envelope import (
    EnvelopeKind,
    envelope_shape,
    select_kind,
)
from memheat.analysis.fitting import FitModel, fit_model_for
from memheat.cli.presets import PRESETS, PresetError, load_preset
from memheat.cli.runner import execute, refine_config
from memheat.config import parse_run_config
from memheat.exceptions import InvalidParameter
from memheat.kernel import certify_g2, kernel_from_config
from memheat.kernel.certificate import RateForm
from memheat.solver import run_from_config


def certificate(name):
    return certify_g2(kernel_from_config(load_preset(name).kernel))


@pytest.mark.parametrize("name", PRESETS)
def test_presets_load(name):
    config = load_preset(name)
    assert config.preset == name
    assert config.solver.m == 2.0
    assert config.mesh.dim == 1
    assert config.field.initial == "sine"


def test_example31():
    config = load_preset("example31")
    assert config.solver.t_final == 200.0
    assert config.solver.time_mesh == "geometric(1.00065)"
    cert = certificate("example31")
    assert cert.l == pytest.approx(0.5, abs=1e-6)
    assert cert.p == pytest.approx(4.0 / 3.0)
    assert cert.xi(10.0) == pytest.approx(3.0)
    assert select_kind(cert)[0] is EnvelopeKind.OPTIMAL_POLYNOMIAL
    assert fit_model_for(cert) == (FitModel.POWER_LAW, 1.0)


def test_example32():
    config = load_preset("example32")
    assert config.kernel.a == pytest.approx(math.e / 8.0, rel=1e-8)
    cert = certificate("example32")
    assert cert.l == pytest.approx(0.5, abs=1e-6)
    assert cert.p == 1.0
    assert cert.xi.form is RateForm.POWER
    assert cert.xi(3.0) == pytest.approx(0.25)
    assert select_kind(cert)[0] is EnvelopeKind.EXPONENTIAL
    model, nu = fit_model_for(cert)
    assert model is FitModel.STRETCHED_EXP
    assert nu == pytest.approx(0.5)


def test_heat_check():
    config = load_preset("heat-check")
    assert config.kernel.family == "memoryless"
    assert config.solver.dt == 1e-4
    assert certificate("heat-check").l == pytest.approx(1.0)


def test_unknown_preset():
    with pytest.raises(InvalidParameter) as exc:
        load_preset("example33")
    assert exc.value.args[0] == PresetError.UNKNOWN.format(
        "example33", ", ".join(PRESETS)
    )


@functools.lru_cache(maxsize=None)
def preset_run(name, t_final=None):
    """The preset on a coarser mesh, optionally over a shorter horizon."""
    config = load_preset(name)
    cells = 256 if name == "heat-check" else 32
    solver = config.solver
    if t_final is not None:
        solver = replace(solver, t_final=t_final)
    config = replace(
        config, mesh=replace(config.mesh, cells=cells), solver=solver
    )
    return execute(config, write=False)


def tail(artifacts):
    trace = artifacts.trace
    mask = trace.window_mask()
    return trace.t[mask], trace.energy[mask]


def random_configs(count=20, seed=2024):
    rng = np.random.default_rng(seed)
    configs = []
    for k in range(count):
        share = float(rng.uniform(0.2, 0.8))
        family = ("power_law", "stretched_exp", "pure_exp")[k % 3]
        if family == "power_law":
            nu = float(rng.uniform(2.2, 4.0))
            kernel = {"a": share * (nu - 1.0), "nu": nu}
        elif family == "pure_exp":
            b = float(rng.uniform(0.5, 3.0))
            kernel = {"a": share * b, "b": b}
        else:
            alpha = float(rng.uniform(0.5, 1.0))
            kernel = {"a": share * math.e / 8.0, "b": 1.0, "alpha": alpha}
        kernel["family"] = family
        configs.append(
            parse_run_config(
                {
                    "seed": int(rng.integers(1000)),
                    "kernel": kernel,
                    "mesh": {"cells": int(rng.integers(8, 33))},
                    "field": {
                        "components": 1 + k % 2,
                        "initial": ("sine", "bump", "random")[k % 3],
                    },
                    "solver": {
                        "m": float(rng.uniform(2.0, 3.5)),
                        "dt": float(rng.uniform(0.02, 0.1)),
                        "t_final": 1.0,
                    },
                }
            )
        )
    return configs


@pytest.mark.parametrize("name", PRESETS)
def test_preset_energy_is_nonincreasing(name):
    trace = preset_run(name).trace
    assert is_monotone(trace)
    assert np.all(np.diff(trace.energy) <= 1e-10 * trace.e0)


@pytest.mark.parametrize("config", random_configs())
def test_random_config_energy_is_nonincreasing(config):
    trace, _ = run_from_config(config)
    assert np.all(np.diff(trace.energy) <= 1e-10 * trace.e0)


def test_example31_decays_like_the_kernel():
    artifacts = preset_run("example31")
    summary = artifacts.summary
    assert artifacts.trace.t_final == 200.0
    assert len(artifacts.trace) > 4000
    assert summary["memory_mode"] == "compressed"
    assert summary["fit"]["model"] == "power_law"
    assert -3.45 <= summary["fit"]["params"]["exponent"] <= -2.55
    t, e = tail(artifacts)
    scaled = e * (1.0 + t) ** 3
    assert scaled.max() <= 1.5 * scaled.min()
    assert summary["envelope"]["kind"] == "OptimalPolynomial"
    assert summary["envelope"]["margin"] >= 0.0
    # the envelope constant belongs to the tail, not to E(0)
    assert summary["envelope"]["lambda0"] < summary["energy"]["E0"]


def test_example31_energy_integral_settles():
    summary = preset_run("example31").summary
    assert summary["checks"]["integrable"] is True
    assert 0.0 <= summary["checks"]["energy_integral_tail"] < 0.01


def test_example32_decays_in_root_time():
    artifacts = preset_run("example32")
    summary = artifacts.summary
    assert summary["memory_mode"] == "compressed"
    fit = summary["fit"]
    assert fit["model"] == "stretched_exp"
    assert fit["params"]["nu"] == pytest.approx(0.5)
    assert fit["params"]["slope"] < 0.0
    assert fit["residual"] <= 0.1
    assert summary["envelope"]["kind"] == "Exponential"
    assert summary["envelope"]["margin"] >= 0.0
    shape = envelope_shape(
        EnvelopeKind.EXPONENTIAL,
        artifacts.trace.certificate.xi,
        1.0,
        summary["envelope"]["lambda1"],
        artifacts.trace.t,
    )
    mask = artifacts.trace.window_mask()
    bound = summary["envelope"]["lambda0"] * shape[mask]
    assert np.all(artifacts.trace.energy[mask] <= bound * (1.0 + 1e-12))


def test_example31_k0_is_stable_in_the_horizon():
    short = preset_run("example31", t_final=50.0).summary["checks"]
    long = preset_run("example31", t_final=100.0).summary["checks"]
    assert math.isfinite(short["k0"])
    assert short["k0_excluded"] is not None
    assert abs(long["k0"] / short["k0"] - 1.0) < 0.05


def test_example31_dissipation_residual_is_first_order():
    config = load_preset("example31")
    config = replace(
        config,
        mesh=replace(config.mesh, cells=128),
        memory=replace(config.memory, mode="direct"),
        solver=replace(
            config.solver, dt=1e-2, t_final=50.0, time_mesh="uniform"
        ),
    )
    coarse, _ = run_from_config(config)
    fine, _ = run_from_config(refine_config(config))
    result = dissipation_residual(coarse, fine)
    assert result.ratio >= 1.8


def test_example31_compressed_run_matches_direct():
    config = load_preset("example31")
    config = replace(
        config,
        mesh=replace(config.mesh, cells=16),
        solver=replace(config.solver, t_final=20.0),
    )
    fast, _ = run_from_config(config)
    direct, _ = run_from_config(
        replace(config, memory=replace(config.memory, mode="direct"))
    )
    assert fast.memory_mode == "compressed"
    assert direct.memory_mode == "direct"
    assert np.allclose(fast.energy, direct.energy, rtol=1e-5, atol=0.0)
