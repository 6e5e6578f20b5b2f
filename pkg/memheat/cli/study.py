# -*- coding: utf-8 -*-
"""Sweeps over independent runs and refinement studies.

Every run builds its own kernel, memory and trace inside the worker, so
runs share nothing; each writes only to its own output directory.
"""
import logging
import math
import multiprocessing
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from memheat.analysis.energy import dissipation_residual
from memheat.cli.runner import execute, refine_config
from memheat.config import RunConfig, Settings
from memheat.exceptions import InvalidParameter
from memheat.solver import run_from_config

logger = logging.getLogger(__name__)

_ERR_PFX = "Study: "


class StudyError:
    """Message Literals used for Errors in sweeps and studies."""

    LEVELS = _ERR_PFX + "a convergence study needs levels >= 2. Got {0}."
    DIRS = _ERR_PFX + "got {0} output dirs for {1} configs."


def worker_count(tasks: int) -> int:
    """MEMHEAT_THREADS workers (0: one per CPU), never more than tasks."""
    threads = Settings().memheat_threads
    if threads <= 0:
        threads = multiprocessing.cpu_count()
    return max(1, min(threads, tasks))


def _map(func, tasks: list) -> list:
    workers = worker_count(len(tasks))
    if workers == 1:
        return [func(*task) for task in tasks]
    logger.info("%d runs over %d worker processes", len(tasks), workers)
    with multiprocessing.Pool(processes=workers) as pool:
        return pool.starmap(func, tasks)


def _sweep_task(config, output_dir, refine):
    return execute(config, output_dir, refine).summary


def run_sweep(
    configs: Sequence[RunConfig], output_dirs=None, refine=False
) -> List[dict]:
    """Run every config and return the summaries in input order."""
    configs = list(configs)
    if output_dirs is None:
        output_dirs = [None] * len(configs)
    if len(output_dirs) != len(configs):
        raise InvalidParameter(
            StudyError.DIRS.format(len(output_dirs), len(configs))
        )
    tasks = [(c, d, refine) for c, d in zip(configs, output_dirs)]
    return _map(_sweep_task, tasks)


def heat_oracle(config: RunConfig) -> Optional[Callable]:
    """Exact E(t) when the run is the plain heat equation from a sine
    mode, else None."""
    if not (
        config.kernel.family == "memoryless"
        and config.solver.m == 2.0
        and config.field.initial.strip() == "sine"
        and config.matrix_a.mode == "identity"
    ):
        return None
    extent = config.mesh.extent
    if not isinstance(extent, tuple):
        extent = (extent,) * config.mesh.dim
    rate = sum((math.pi / L) ** 2 for L in extent)
    mass = math.prod(L / 2.0 for L in extent) * config.components
    return lambda t: 0.5 * rate * mass * np.exp(-2.0 * rate * np.asarray(t))


@dataclass(frozen=True)
class LevelResult:
    dt: float
    cells: object
    stamps: int
    dissipation_residual: float
    # max |E - E_exact| over the stamps, when an oracle exists
    oracle_error: Optional[float] = None


def _level_task(config):
    trace, _ = run_from_config(config)
    residual = dissipation_residual(trace).absolute
    oracle = heat_oracle(config)
    error = None
    if oracle is not None:
        error = float(np.max(np.abs(trace.energy - oracle(trace.t))))
    return LevelResult(
        dt=config.solver.dt,
        cells=config.mesh.cells,
        stamps=len(trace),
        dissipation_residual=residual,
        oracle_error=error,
    )


def _ratios(values):
    out = []
    for coarse, fine in zip(values, values[1:]):
        if coarse is None or fine is None:
            out.append(None)
        else:
            out.append(coarse / fine if fine > 0.0 else math.inf)
    return out


@dataclass(frozen=True)
class ConvergenceReport:
    levels: List[LevelResult]

    @property
    def dissipation_ratios(self) -> List[Optional[float]]:
        return _ratios([lv.dissipation_residual for lv in self.levels])

    @property
    def oracle_ratios(self) -> List[Optional[float]]:
        return _ratios([lv.oracle_error for lv in self.levels])

    def to_dict(self) -> dict:
        return {
            "levels": [
                {
                    "dt": lv.dt,
                    "cells": lv.cells,
                    "stamps": lv.stamps,
                    "dissipation_residual": lv.dissipation_residual,
                    "oracle_error": lv.oracle_error,
                }
                for lv in self.levels
            ],
            "dissipation_ratios": self.dissipation_ratios,
            "oracle_ratios": self.oracle_ratios,
        }


def convergence_study(config: RunConfig, levels: int) -> ConvergenceReport:
    """Run at (dt, h), (dt/2, h/2), ... and report the error ratios of
    successive levels. First order in time shows as ratios near 2."""
    if not isinstance(levels, int) or levels < 2:
        raise InvalidParameter(StudyError.LEVELS.format(levels))
    configs = [config]
    for _ in range(levels - 1):
        configs.append(refine_config(configs[-1]))
    report = ConvergenceReport(_map(_level_task, [(c,) for c in configs]))
    logger.info(
        "convergence over %d levels: dissipation ratios %s, oracle "
        "ratios %s",
        levels,
        report.dissipation_ratios,
        report.oracle_ratios,
    )
    return report
