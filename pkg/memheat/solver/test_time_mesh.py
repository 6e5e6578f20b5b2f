# -*- coding: utf-8 -*-
import numpy as np
import pytest

from memheat.exceptions import InvalidParameter
from memheat.solver import TimeMesh, parse_time_mesh, time_grid
from memheat.solver.time_mesh import TimeMeshError, TimeMeshKind


def test_parse_time_mesh():
    assert parse_time_mesh("uniform") == TimeMesh()
    mesh = parse_time_mesh("geometric(1.00065)")
    assert mesh.kind is TimeMeshKind.GEOMETRIC
    assert mesh.ratio == 1.00065
    assert mesh.describe() == "geometric(1.00065)"
    assert parse_time_mesh(" geometric ( 2 ) ").ratio == 2.0
    assert parse_time_mesh(mesh) is mesh


@pytest.mark.parametrize("text", ["cubic", "uniform(2)", "geometric"])
def test_parse_time_mesh_unknown(text):
    with pytest.raises(InvalidParameter) as exc:
        parse_time_mesh(text)
    assert exc.value.args[0] == TimeMeshError.UNKNOWN.format(text)


def test_parse_time_mesh_bad_ratio():
    with pytest.raises(InvalidParameter) as exc:
        parse_time_mesh("geometric(0.5)")
    assert exc.value.args[0] == TimeMeshError.BAD_RATIO.format(0.5)


def test_uniform_grid():
    stamps = time_grid(0.1, 1.0)
    assert stamps.size == 11
    assert stamps[0] == 0.0
    assert stamps[-1] == 1.0
    assert np.allclose(np.diff(stamps), 0.1)


def test_uniform_grid_clips_last_step():
    stamps = time_grid(0.3, 1.0)
    assert np.allclose(stamps, [0.0, 0.3, 0.6, 0.9, 1.0])


def test_zero_horizon():
    assert np.array_equal(time_grid(0.1, 0.0), [0.0])


def test_geometric_grid():
    stamps = time_grid(0.01, 200.0, "geometric(1.00065)")
    steps = np.diff(stamps)
    # 0.01 (r^n - 1)/(r - 1) = 200 gives n close to 4061
    assert 4055 < steps.size < 4070
    assert stamps[-1] == 200.0
    assert np.all(steps > 0)
    assert np.allclose(steps[1:-1] / steps[:-2], 1.00065)


def test_bad_arguments():
    with pytest.raises(InvalidParameter) as exc:
        time_grid(0.0, 1.0)
    assert exc.value.args[0] == TimeMeshError.BAD_STEP.format(0.0)
    with pytest.raises(InvalidParameter) as exc:
        time_grid(0.1, -1.0)
    assert exc.value.args[0] == TimeMeshError.BAD_HORIZON.format(-1.0)
