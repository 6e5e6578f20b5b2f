# -*- coding: utf-8 -*-
import os

import pytest

from memheat.config import (
    Settings,
    dump_run_config,
    load_run_config,
    parse_run_config,
)
from memheat.config.run_config import RunConfigError
from memheat.exceptions import ConfigInvalid
from memheat.utils.yaml import load_yaml

TESTDATA = os.path.join(os.path.dirname(__file__), "testdata")


def _testdata(name):
    return os.path.join(TESTDATA, name)


def test_minimal_config_defaults():
    config = load_run_config(_testdata("run_minimal.yaml"))
    assert config.kernel.family == "power_law"
    assert config.kernel.params == {"a": 1.0, "nu": 3.0}
    assert config.mesh.dim == 1
    assert config.components == 1
    assert config.memory.mode == "direct"
    assert config.solver.time_mesh == "uniform"
    assert config.matrix_a.mode == "identity"
    assert config.analysis.window is None
    assert config.seed == 0


def test_full_config():
    config = load_run_config(_testdata("run_full.yaml"))
    assert config.preset == "example31"
    assert config.seed == 7
    assert config.solver.time_mesh == "geometric(1.00065)"
    assert config.matrix_a.matrix == ((2.0,),)
    assert config.analysis.window == (100.0, 200.0)
    assert config.memory.tol == 1e-6


@pytest.mark.parametrize(
    "name", ["run_minimal.yaml", "run_full.yaml", "run_tabulated.yaml"]
)
def test_round_trip(name, tmp_path):
    config = load_run_config(_testdata(name))
    out = tmp_path / "config.yaml"
    dump_run_config(config, str(out))
    assert load_run_config(str(out)) == config
    # and the written file is itself stable
    assert dump_run_config(load_run_config(str(out))) == out.read_text()


def test_tabulated_samples():
    config = load_run_config(_testdata("run_tabulated.yaml"))
    t, g = config.kernel.samples
    assert t == (0.0, 1.0, 2.0, 4.0)
    assert g[0] == 0.5


def test_unknown_keys_rejected():
    data = load_yaml(_testdata("run_minimal.yaml"))
    data["kernel"]["beta"] = 1.0
    with pytest.raises(ConfigInvalid, match="kernel"):
        parse_run_config(data)

    data = load_yaml(_testdata("run_minimal.yaml"))
    data["solvers"] = {}
    with pytest.raises(ConfigInvalid):
        parse_run_config(data)


@pytest.mark.parametrize(
    "section, key, value",
    [
        ("kernel", "family", "gaussian"),
        ("mesh", "dim", 3),
        ("mesh", "cells", 0),
        ("solver", "dt", -1.0),
        ("solver", "time_mesh", "geometric"),
        ("field", "initial", "random(x)"),
        ("memory", "mode", "fast"),
        ("output", "format", "xml"),
    ],
)
def test_bad_values_rejected(section, key, value):
    data = load_yaml(_testdata("run_minimal.yaml"))
    data.setdefault(section, {})[key] = value
    with pytest.raises(ConfigInvalid) as exc:
        parse_run_config(data)
    assert exc.value.exit_code == 2


def test_consistency_checks():
    data = load_yaml(_testdata("run_minimal.yaml"))
    data["A"] = {"mode": "constant"}
    with pytest.raises(ConfigInvalid) as exc:
        parse_run_config(data)
    assert exc.value.args[0] == RunConfigError.MATRIX_REQUIRED.format(
        "constant"
    )

    data["A"] = {"mode": "constant", "matrix": [[1.0, 0.0], [0.0, 1.0]]}
    with pytest.raises(ConfigInvalid, match="must be 1x1"):
        parse_run_config(data)

    data = load_yaml(_testdata("run_minimal.yaml"))
    data["analysis"] = {"window": [5.0, 1.0]}
    with pytest.raises(ConfigInvalid):
        parse_run_config(data)

    with pytest.raises(ConfigInvalid):
        parse_run_config({"kernel": {"family": "tabulated"}})


def test_not_a_mapping():
    with pytest.raises(ConfigInvalid):
        parse_run_config(["kernel"])


def test_settings_defaults(monkeypatch):
    for name in ("MEMHEAT_THREADS", "MEMHEAT_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    settings = Settings()
    assert settings.memheat_threads == 0
    assert settings.memheat_log_level == "INFO"
    assert isinstance(settings.memheat_grid_points, int)


def test_settings_environment(monkeypatch):
    monkeypatch.setenv("MEMHEAT_THREADS", "3")
    assert Settings().memheat_threads == 3
    assert Settings(MEMHEAT_THREADS=1).memheat_threads == 1
