# -*- coding: utf-8 -*-
"""Trace CSV and summary JSON files.

Floats are written with `repr`, the shortest text that reads back to the
same double, so a rerun with the same config writes identical bytes.
"""
import csv
import logging

import numpy as np

from memheat.analysis.trace import EnergyTrace
from memheat.exceptions import InvalidParameter
from memheat.utils import jsonn

logger = logging.getLogger(__name__)

_ERR_PFX = "Emit: "

CSV_HEADER = (
    "t",
    "E",
    "g_circ_grad",
    "grad_sq",
    "dissipation",
    "envelope",
)
# CSV column -> EnergyTrace series
_SERIES = {
    "t": "t",
    "E": "energy",
    "g_circ_grad": "g_circ_grad",
    "grad_sq": "grad_sq",
    "dissipation": "dissipation",
}


class EmitError:
    """Message Literals used for Errors in trace files."""

    ENVELOPE_LENGTH = (
        _ERR_PFX + "envelope has {0} values for a trace of {1} stamps."
    )
    MISSING_COLUMNS = _ERR_PFX + "{0} lacks the columns {1}."
    BAD_VALUE = _ERR_PFX + "{0} line {1}: {2}"


def _cell(value) -> str:
    return repr(float(value))


def emit_csv(trace: EnergyTrace, path, envelope=None) -> str:
    """One row per stamp in time order. `envelope` holds lambda0 S(t_k);
    without it the column is left empty."""
    if envelope is not None:
        envelope = np.asarray(envelope, dtype=float)
        if envelope.shape != (len(trace),):
            raise InvalidParameter(
                EmitError.ENVELOPE_LENGTH.format(envelope.size, len(trace))
            )
    columns = [getattr(trace, _SERIES[name]) for name in CSV_HEADER[:-1]]
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for k, row in enumerate(zip(*columns)):
            bound = "" if envelope is None else _cell(envelope[k])
            writer.writerow([_cell(v) for v in row] + [bound])
    logger.info("wrote %d stamps to %s", len(trace), path)
    return str(path)


def read_trace_csv(path) -> EnergyTrace:
    """EnergyTrace from a file written by `emit_csv`; series the file does
    not carry are zero."""
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        missing = [c for c in ("t", "E") if c not in (reader.fieldnames or ())]
        if missing:
            raise InvalidParameter(
                EmitError.MISSING_COLUMNS.format(path, missing)
            )
        present = [c for c in _SERIES if c in reader.fieldnames]
        series = {name: [] for name in present}
        for line, row in enumerate(reader, start=2):
            try:
                for name in present:
                    series[name].append(float(row[name]))
            except (TypeError, ValueError) as exc:
                raise InvalidParameter(
                    EmitError.BAD_VALUE.format(path, line, exc)
                ) from exc
    data = {_SERIES[name]: values for name, values in series.items()}
    return EnergyTrace(**data)


def emit_json(summary: dict, path) -> str:
    with open(path, "w", encoding="utf-8") as f:
        f.write(jsonn.dumps(summary))
        f.write("\n")
    logger.info("wrote summary to %s", path)
    return str(path)
