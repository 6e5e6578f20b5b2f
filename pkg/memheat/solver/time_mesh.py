# -*- coding: utf-8 -*-
"""Uniform and geometrically graded time meshes on [0, T]."""
import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

from memheat.exceptions import InvalidParameter
from memheat.utils.enums import CustomEnum

_ERR_PFX = "TimeMesh: "

_SPEC = re.compile(
    r"^\s*(uniform|geometric)\s*(?:\(\s*([0-9]*\.?[0-9]+(?:[eE][-+]?"
    r"[0-9]+)?)\s*\))?\s*$"
)
# a final step shorter than this fraction of the nominal one is merged
_MERGE = 1e-9


class TimeMeshKind(Enum, metaclass=CustomEnum):
    UNIFORM = "uniform"
    GEOMETRIC = "geometric"


class TimeMeshError:
    """Message Literals used for Errors in time meshes."""

    UNKNOWN = (
        _ERR_PFX + "unknown time mesh `{0}`; expected uniform or "
        "geometric(<ratio>)."
    )
    BAD_RATIO = _ERR_PFX + "geometric ratio must be >= 1. Got {0}."
    BAD_STEP = _ERR_PFX + "dt must be positive. Got {0}."
    BAD_HORIZON = _ERR_PFX + "t_final must be >= 0. Got {0}."


@dataclass(frozen=True)
class TimeMesh:
    kind: TimeMeshKind = TimeMeshKind.UNIFORM
    ratio: float = 1.0

    def describe(self) -> str:
        if self.kind is TimeMeshKind.UNIFORM:
            return "uniform"
        return f"geometric({self.ratio:g})"


def parse_time_mesh(text) -> TimeMesh:
    """'uniform' or 'geometric(1.00065)'."""
    if isinstance(text, TimeMesh):
        return text
    match = _SPEC.match(str(text))
    if not match:
        raise InvalidParameter(TimeMeshError.UNKNOWN.format(text))
    kind = TimeMeshKind.parse(match.group(1))
    if kind is TimeMeshKind.UNIFORM:
        if match.group(2):
            raise InvalidParameter(TimeMeshError.UNKNOWN.format(text))
        return TimeMesh()
    if not match.group(2):
        raise InvalidParameter(TimeMeshError.UNKNOWN.format(text))
    ratio = float(match.group(2))
    if ratio < 1.0:
        raise InvalidParameter(TimeMeshError.BAD_RATIO.format(ratio))
    return TimeMesh(kind, ratio)


def time_grid(dt: float, t_final: float, mesh="uniform") -> np.ndarray:
    """Stamps 0 = t_0 < ... < t_n = T.

    Uniform stamps are k dt. Geometric steps are dt r^k. The last step is
    clipped to land on T.
    """
    mesh = parse_time_mesh(mesh)
    if not dt > 0:
        raise InvalidParameter(TimeMeshError.BAD_STEP.format(dt))
    if t_final < 0:
        raise InvalidParameter(TimeMeshError.BAD_HORIZON.format(t_final))
    if t_final == 0:
        return np.zeros(1)

    if mesh.kind is TimeMeshKind.UNIFORM or mesh.ratio == 1.0:
        count = int(np.ceil(t_final / dt * (1.0 - _MERGE)))
        stamps = dt * np.arange(count + 1, dtype=float)
        stamps[-1] = t_final
        return stamps

    stamps = [0.0]
    step = dt
    while t_final - stamps[-1] > _MERGE * step:
        stamps.append(min(stamps[-1] + step, t_final))
        step *= mesh.ratio
    stamps[-1] = t_final
    return np.asarray(stamps)
