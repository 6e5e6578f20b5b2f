# -*- coding: utf-8 -*-
"""The damping matrix A(t) and its coercivity floor (A(t)v, v) >= c0|v|^2."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from memheat.exceptions import HypothesisViolated, InvalidParameter
from memheat.utils.enums import CustomEnum

logger = logging.getLogger(__name__)

_ERR_PFX = "MatrixA: "

COERCIVITY = "coercivity"
# relative slack on the sampled coercivity inequality
COERCIVITY_TOL = 1e-12
SAMPLE_TIMES = 257


class AMode(Enum, metaclass=CustomEnum):
    IDENTITY = "identity"
    CONSTANT = "constant"
    TIME_VARYING = "time_varying"


class MatrixAError:
    """Message Literals used for Errors in MatrixA."""

    BAD_C0 = _ERR_PFX + "c0 must be positive. Got {0}."
    SHAPE = _ERR_PFX + "A must be {0}x{0}. Got {1}."
    NOT_FINITE = _ERR_PFX + "A({0:g}) has non-finite entries."
    COERCIVITY = (
        _ERR_PFX + "(A(t)v, v) >= c0|v|^2 fails at t={0:g}: smallest "
        "eigenvalue of the symmetric part is {1:.6g} < c0 = {2:.6g}."
    )
    VELOCITY = (
        _ERR_PFX + "(A(t)v, v) >= c0|v|^2 fails at t={0:g} for a nodal "
        "velocity: {1:.6g} < {2:.6g}."
    )
    NO_MATRIX = _ERR_PFX + "mode {0} needs a matrix or a callable."


@dataclass(frozen=True, eq=False)
class MatrixA:
    """A(t) as an n_c x n_c matrix.

    `identity`: I. `constant`: `matrix`. `time_varying`:
    (1 + amplitude sin(frequency t)) `matrix`, or `func(t)` when given.
    """

    mode: AMode
    components: int
    c0: float = 1.0
    matrix: Optional[np.ndarray] = None
    amplitude: float = 0.0
    frequency: float = 1.0
    func: Optional[Callable] = None

    def __post_init__(self):
        object.__setattr__(self, "mode", AMode.parse(self.mode))
        if not self.c0 > 0:
            raise InvalidParameter(MatrixAError.BAD_C0.format(self.c0))
        if self.mode is not AMode.IDENTITY and self.func is None:
            if self.matrix is None:
                raise InvalidParameter(
                    MatrixAError.NO_MATRIX.format(self.mode.value)
                )
            matrix = np.array(self.matrix, dtype=float)
            if matrix.shape != (self.components,) * 2:
                raise InvalidParameter(
                    MatrixAError.SHAPE.format(self.components, matrix.shape)
                )
            matrix.setflags(write=False)
            object.__setattr__(self, "matrix", matrix)

    @property
    def is_identity(self) -> bool:
        return self.mode is AMode.IDENTITY

    def at(self, t: float) -> np.ndarray:
        if self.mode is AMode.IDENTITY:
            return np.eye(self.components)
        if self.mode is AMode.CONSTANT:
            return self.matrix
        if self.func is not None:
            out = np.asarray(self.func(t), dtype=float)
        else:
            scale = 1.0 + self.amplitude * np.sin(self.frequency * t)
            out = scale * self.matrix
        if out.shape != (self.components,) * 2:
            raise InvalidParameter(
                MatrixAError.SHAPE.format(self.components, out.shape)
            )
        if not np.all(np.isfinite(out)):
            raise InvalidParameter(MatrixAError.NOT_FINITE.format(t))
        return out

    def coercivity(self, t: float) -> float:
        """Smallest eigenvalue of the symmetric part of A(t)."""
        a = self.at(t)
        return float(np.linalg.eigvalsh(0.5 * (a + a.T))[0])

    def check_coercivity(self, times) -> float:
        """Validate the floor on sampled times; returns the worst value."""
        worst = np.inf
        for t in np.atleast_1d(times):
            value = self.coercivity(float(t))
            if value < self.c0 * (1.0 - COERCIVITY_TOL):
                raise HypothesisViolated(
                    MatrixAError.COERCIVITY.format(t, value, self.c0),
                    hypothesis=COERCIVITY,
                )
            worst = min(worst, value)
        return worst

    def check_velocity(self, t: float, velocity: np.ndarray, a=None):
        """(A v, v) >= c0|v|^2 at every node of `velocity` (nodes x n_c)."""
        a = self.at(t) if a is None else a
        lhs = np.einsum("ij,nj,ni->n", a, velocity, velocity)
        rhs = self.c0 * np.einsum("ni,ni->n", velocity, velocity)
        slack = COERCIVITY_TOL * np.maximum(rhs, np.finfo(float).tiny)
        if np.any(bad := lhs < rhs - slack):
            i = int(np.argmax(bad))
            raise HypothesisViolated(
                MatrixAError.VELOCITY.format(t, lhs[i], rhs[i]),
                hypothesis=COERCIVITY,
            )


def coercivity_times(t_final: float, count: int = SAMPLE_TIMES):
    return np.linspace(0.0, max(t_final, 0.0), count)


def matrix_a_from_config(section, components: int) -> MatrixA:
    """MatrixA for the `A` section of a `RunConfig`."""
    return MatrixA(
        mode=AMode.parse(section.mode),
        components=components,
        c0=section.c0,
        matrix=section.matrix,
        amplitude=section.amplitude,
        frequency=section.frequency,
    )
