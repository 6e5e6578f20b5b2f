# -*- coding: utf-8 -*-
"""Per-stamp record of a run."""
from dataclasses import dataclass
from typing import Any, NamedTuple, Optional, Tuple

import numpy as np

from memheat.exceptions import InvalidParameter, NonMonotoneTime

_ERR_PFX = "EnergyTrace: "

SERIES = (
    "energy",
    "g_circ_grad",
    "grad_sq",
    "dissipation",
    "int_g",
    "g_value",
    "g_prime_circ_grad",
    "newton_iterations",
)


class TraceError:
    """Message Literals used for Errors in EnergyTrace."""

    LENGTH = _ERR_PFX + "series `{0}` has {1} entries for {2} stamps."
    NOT_INCREASING = _ERR_PFX + "stamps must increase strictly."
    NO_SNAPSHOTS = _ERR_PFX + "the run did not keep field snapshots."
    BAD_WINDOW = (
        _ERR_PFX + "window [{0:g}, {1:g}] holds no stamps of the trace "
        "on [{2:g}, {3:g}]."
    )


class TracePoint(NamedTuple):
    t: float
    g_circ_grad: float
    grad_sq: float
    int_g: Optional[float] = None


@dataclass(frozen=True, eq=False)
class EnergyTrace:
    """Stamps t_k with E, (g o grad u), ||grad u||^2, the dissipation
    D = <A Phi(u_t), u_t> of the step ending at t_k (0 at t_0), int_0^t g,
    g(t), (g' o grad u) and the Newton iteration count.

    Only `t` and `energy` are required; other series default to zeros,
    so synthetic traces can be built from an energy curve alone.
    """

    t: np.ndarray
    energy: np.ndarray
    g_circ_grad: Optional[np.ndarray] = None
    grad_sq: Optional[np.ndarray] = None
    dissipation: Optional[np.ndarray] = None
    int_g: Optional[np.ndarray] = None
    g_value: Optional[np.ndarray] = None
    g_prime_circ_grad: Optional[np.ndarray] = None
    newton_iterations: Optional[np.ndarray] = None
    kernel: Any = None
    certificate: Any = None
    snapshots: Optional[Tuple] = None
    m: float = 2.0
    epsilon: float = 0.0
    matrix_a: Any = None
    memory_mode: str = "direct"

    def __post_init__(self):
        t = np.array(self.t, dtype=float).ravel()
        if np.any(np.diff(t) <= 0):
            raise NonMonotoneTime(TraceError.NOT_INCREASING)
        t.setflags(write=False)
        object.__setattr__(self, "t", t)
        for name in SERIES:
            value = getattr(self, name)
            dtype = int if name == "newton_iterations" else float
            if value is None:
                value = np.zeros(t.size, dtype=dtype)
            value = np.array(value, dtype=dtype).ravel()
            if value.size != t.size:
                raise InvalidParameter(
                    TraceError.LENGTH.format(name, value.size, t.size)
                )
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        if self.snapshots is not None:
            object.__setattr__(self, "snapshots", tuple(self.snapshots))
            if len(self.snapshots) != t.size:
                raise InvalidParameter(
                    TraceError.LENGTH.format(
                        "snapshots", len(self.snapshots), t.size
                    )
                )

    def __len__(self):
        return self.t.size

    @property
    def e0(self) -> float:
        return float(self.energy[0]) if len(self) else 0.0

    @property
    def t_final(self) -> float:
        return float(self.t[-1]) if len(self) else 0.0

    @property
    def mesh(self):
        return self.snapshots[0].mesh if self.snapshots else None

    def point(self, k: int) -> TracePoint:
        return TracePoint(
            float(self.t[k]),
            float(self.g_circ_grad[k]),
            float(self.grad_sq[k]),
            float(self.int_g[k]),
        )

    def require_snapshots(self):
        if self.snapshots is None:
            raise InvalidParameter(TraceError.NO_SNAPSHOTS)
        return self.snapshots

    def default_window(self) -> Tuple[float, float]:
        """[T/2, T], the tail of the trace."""
        return 0.5 * self.t_final, self.t_final

    def window_mask(self, window=None) -> np.ndarray:
        t0, t1 = window if window is not None else self.default_window()
        mask = (self.t >= t0) & (self.t <= t1)
        if not np.any(mask):
            raise InvalidParameter(
                TraceError.BAD_WINDOW.format(
                    t0, t1, self.t[0] if len(self) else 0.0, self.t_final
                )
            )
        return mask
