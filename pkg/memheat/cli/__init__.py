# -*- coding: utf-8 -*-
from memheat.cli.emit import emit_csv, emit_json, read_trace_csv
from memheat.cli.presets import PRESETS, load_preset
from memheat.cli.runner import RunArtifacts, execute, run_preset
from memheat.cli.study import (
    ConvergenceReport,
    convergence_study,
    run_sweep,
)

__all__ = [
    "ConvergenceReport",
    "PRESETS",
    "RunArtifacts",
    "convergence_study",
    "emit_csv",
    "emit_json",
    "execute",
    "load_preset",
    "read_trace_csv",
    "run_preset",
    "run_sweep",
]
