# -*- coding: utf-8 -*-
import math
import time

import numpy as np
import pytest

from memheat.discretization import Field, build_mesh
from memheat.exceptions import CompressionFailed, InvalidParameter
from memheat.kernel import make_kernel
from memheat.memory import (
    CompressedHistory,
    DirectMemory,
    compress_kernel,
)
from memheat.memory.compression import CompressionError

POWER_LAW = make_kernel("power_law", {"a": 1.0, "nu": 3.0})
PURE_EXP = make_kernel("pure_exp", {"a": 0.7, "b": 1.5})


def history(mesh, count, seed, dt=0.05):
    rng = np.random.default_rng(seed)
    shape = mesh.interior_shape + (1,)
    return [
        (k * dt, Field(mesh, rng.standard_normal(shape)))
        for k in range(count)
    ]


def relative(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


def test_pure_exp_is_exact():
    compressed = compress_kernel(PURE_EXP, 10.0, modes=12)
    assert compressed.modes == 1
    assert compressed.weights.tolist() == [0.7]
    assert compressed.rates.tolist() == [1.5]
    assert compressed.error == 0.0


def test_no_modes():
    with pytest.raises(InvalidParameter) as exc:
        compress_kernel(POWER_LAW, 50.0, modes=0)
    assert exc.value.args[0] == CompressionError.BAD_MODES.format(0)
    with pytest.raises(InvalidParameter):
        compress_kernel(POWER_LAW, 0.0)


def test_power_law_fit():
    compressed = compress_kernel(POWER_LAW, 50.0, modes=12, tol=1e-6)
    assert compressed.error <= 1e-6
    assert np.all(compressed.rates > 0)
    assert np.all(compressed.weights > 0)
    t = np.linspace(0.0, 50.0, 997)
    exact = POWER_LAW.value(t)
    assert np.max(np.abs(compressed.value(t) - exact)) <= 1.2e-6
    assert compressed.integral(50.0) == pytest.approx(
        POWER_LAW.integral(50.0), abs=5e-5
    )


@pytest.mark.parametrize(
    "kernel",
    [
        POWER_LAW,
        make_kernel(
            "stretched_exp", {"a": math.e / 8.0, "b": 1.0, "alpha": 0.5}
        ),
    ],
)
def test_fit_over_a_long_horizon(kernel):
    compressed = compress_kernel(kernel, 200.0, modes=12, tol=1e-6)
    assert compressed.error <= 1e-6
    assert compressed.horizon == 200.0
    assert np.all(np.diff(compressed.value(np.linspace(0, 200, 401))) < 0)


def test_short_horizon_keeps_the_relative_fit():
    compressed = compress_kernel(POWER_LAW, 10.0, modes=12, tol=1e-6)
    assert compressed.rel_error <= 2e-6
    assert compressed.error <= compressed.rel_error


def test_fit_not_met():
    with pytest.raises(CompressionFailed) as exc:
        compress_kernel(POWER_LAW, 50.0, modes=1, tol=1e-6)
    assert exc.value.error > 1e-6


def test_pure_exp_history_matches_direct():
    mesh = build_mesh(1, 1.0, 16)
    direct = DirectMemory(PURE_EXP, mesh)
    fast = CompressedHistory(compress_kernel(PURE_EXP, 5.0), mesh)
    assert fast.mode == "compressed"
    current = history(mesh, 1, seed=9)[0][1]
    for t, field in history(mesh, 40, seed=5):
        direct.push(t, field)
        fast.push(t, field)
        target = t + 0.05
        assert relative(
            fast.convolution(target), direct.convolution(target)
        ) < 1e-10
        assert fast.g_circ_grad(target, current) == pytest.approx(
            direct.g_circ_grad(target, current), rel=1e-10
        )
        assert fast.g_prime_circ_grad(target, current) == pytest.approx(
            direct.g_prime_circ_grad(target, current), rel=1e-10
        )
        assert fast.weight_sum(target) == pytest.approx(
            direct.weight_sum(target), rel=1e-10
        )
    assert len(fast) == len(direct) == 40


def test_power_law_history_matches_direct():
    mesh = build_mesh(1, 1.0, 16)
    compressed = compress_kernel(POWER_LAW, 10.0, modes=12, tol=1e-6)
    direct = DirectMemory(POWER_LAW, mesh)
    fast = CompressedHistory(compressed, mesh)
    # a smooth history: the same sine profile with a decaying amplitude
    x = mesh.coordinates(0)
    for k in range(100):
        t = 0.05 * k
        field = Field(mesh, np.exp(-t) * np.sin(np.pi * x))
        direct.push(t, field)
        fast.push(t, field)
    current = Field(mesh, np.exp(-5.0) * np.sin(np.pi * x))
    assert relative(fast.convolution(5.0), direct.convolution(5.0)) < 1e-5
    assert fast.g_circ_grad(5.0, current) == pytest.approx(
        direct.g_circ_grad(5.0, current), rel=1e-5
    )
    assert fast.weight_sum(5.0) == pytest.approx(
        POWER_LAW.integral(5.0), rel=1e-5
    )


def test_empty_compressed_history():
    mesh = build_mesh(1, 1.0, 8)
    fast = CompressedHistory(compress_kernel(PURE_EXP, 1.0), mesh)
    assert np.all(fast.convolution(0.0) == 0.0)
    assert fast.g_circ_grad(0.0, history(mesh, 1, seed=1)[0][1]) == 0.0
    assert fast.weight_sum(0.0) == 0.0


def test_memoryless_compression():
    memoryless = make_kernel("memoryless")
    compressed = compress_kernel(memoryless, 1.0)
    assert compressed.modes == 0
    mesh = build_mesh(1, 1.0, 8)
    fast = CompressedHistory(compressed, mesh)
    for t, field in history(mesh, 3, seed=2):
        fast.push(t, field)
    assert np.all(fast.convolution(1.0) == 0.0)
    assert fast.g_circ_grad(1.0, field) == 0.0


def best_time(memory, t, current, repeats=5):
    times = []
    for _ in range(repeats):
        started = time.perf_counter()
        memory.convolution(t)
        memory.g_circ_grad(t, current)
        memory.g_prime_circ_grad(t, current)
        memory.weight_sum(t)
        times.append(time.perf_counter() - started)
    return min(times)


def test_compressed_step_cost_does_not_grow_with_history():
    mesh = build_mesh(1, 1.0, 64)
    compressed = compress_kernel(POWER_LAW, 200.0, modes=12, tol=1e-6)
    direct = DirectMemory(POWER_LAW, mesh)
    fast = CompressedHistory(compressed, mesh)
    x = mesh.coordinates(0)
    # 4000 stamps of a geometric mesh from dt = 0.01
    t = np.concatenate([[0.0], np.cumsum(0.01 * 1.00065 ** np.arange(4000))])
    for s in t:
        field = Field(mesh, (1.0 + s) ** -1.5 * np.sin(np.pi * x))
        direct.push(s, field)
        fast.push(s, field)
    end = t[-1] + 0.1
    current = Field(mesh, (1.0 + end) ** -1.5 * np.sin(np.pi * x))
    assert best_time(direct, end, current) >= 5.0 * best_time(
        fast, end, current
    )
    assert fast.weight_sum(end) == pytest.approx(
        direct.weight_sum(end), abs=2e-4
    )
