# -*- coding: utf-8 -*-
"""Uniform Dirichlet tensor grids and the fields that live on them."""
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from memheat.exceptions import InvalidParameter

_ERR_PFX = "Mesh: "

MIN_CELLS = 4
MAX_DIM = 2


class MeshError:
    """Message Literals used for Errors in Mesh and Field."""

    BAD_DIM = _ERR_PFX + "dim must be 1 or 2. Got {0}."
    AXIS_COUNT = _ERR_PFX + "expected {0} value(s) for `{1}`. Got {2}."
    TOO_COARSE = (
        _ERR_PFX + "cells must be >= {0} per axis (>= 3 interior "
        "nodes). Got {1}."
    )
    BAD_EXTENT = _ERR_PFX + "extent must be positive. Got {0}."
    BAD_COMPONENTS = _ERR_PFX + "components must be >= 1. Got {0}."
    SHAPE = _ERR_PFX + "field values must have shape {0}. Got {1}."
    NOT_FINITE = _ERR_PFX + "field has non-finite entries."
    MISMATCH = _ERR_PFX + "fields live on different meshes or shapes."


def _per_axis(value, dim, name):
    if np.ndim(value) == 0:
        return (value,) * dim
    values = tuple(value)
    if len(values) != dim:
        raise InvalidParameter(MeshError.AXIS_COUNT.format(dim, name, values))
    return values


@dataclass(frozen=True)
class Mesh:
    dim: int
    extent: Tuple[float, ...]
    cells: Tuple[int, ...]

    @property
    def spacing(self) -> Tuple[float, ...]:
        return tuple(L / n for L, n in zip(self.extent, self.cells))

    @property
    def interior_shape(self) -> Tuple[int, ...]:
        return tuple(n - 1 for n in self.cells)

    @property
    def node_count(self) -> int:
        return math.prod(self.interior_shape)

    @property
    def cell_volume(self) -> float:
        return math.prod(self.spacing)

    def coordinates(self, axis: int) -> np.ndarray:
        """Interior node positions along `axis`."""
        h = self.spacing[axis]
        return h * np.arange(1, self.cells[axis])

    def grid(self) -> Tuple[np.ndarray, ...]:
        return np.meshgrid(
            *(self.coordinates(k) for k in range(self.dim)), indexing="ij"
        )


def build_mesh(dim: int, extent=1.0, cells=64) -> Mesh:
    if dim not in (1, 2):
        raise InvalidParameter(MeshError.BAD_DIM.format(dim))
    extent = tuple(float(L) for L in _per_axis(extent, dim, "extent"))
    cells = tuple(int(n) for n in _per_axis(cells, dim, "cells"))
    if any(not L > 0 for L in extent):
        raise InvalidParameter(MeshError.BAD_EXTENT.format(extent))
    if any(n < MIN_CELLS for n in cells):
        raise InvalidParameter(MeshError.TOO_COARSE.format(MIN_CELLS, cells))
    return Mesh(dim=dim, extent=extent, cells=cells)


def mesh_from_config(section) -> Mesh:
    return build_mesh(section.dim, section.extent, section.cells)


@dataclass(frozen=True, eq=False)
class Field:
    """Vector-valued nodal values on the interior nodes of `mesh`.

    `values` has shape `mesh.interior_shape + (components,)`; the boundary
    nodes are not stored and are zero. The array is read-only, so a Field
    is a snapshot; arithmetic returns new fields.
    """

    mesh: Mesh
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim == self.mesh.dim:
            values = values[..., np.newaxis]
        if (
            values.shape[:-1] != self.mesh.interior_shape
            or values.ndim != self.mesh.dim + 1
        ):
            raise InvalidParameter(
                MeshError.SHAPE.format(
                    self.mesh.interior_shape + ("n_c",), values.shape
                )
            )
        if not np.all(np.isfinite(values)):
            raise InvalidParameter(MeshError.NOT_FINITE)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def components(self) -> int:
        return self.values.shape[-1]

    @property
    def flat(self) -> np.ndarray:
        """Node-major, component-minor vector of the values."""
        return self.values.reshape(-1)

    @classmethod
    def from_flat(cls, mesh: Mesh, flat, components: int):
        return cls(
            mesh, np.reshape(flat, mesh.interior_shape + (components,))
        )

    def _check(self, other):
        if other.mesh != self.mesh or other.values.shape != self.values.shape:
            raise InvalidParameter(MeshError.MISMATCH)

    def __add__(self, other):
        self._check(other)
        return Field(self.mesh, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return Field(self.mesh, self.values - other.values)

    def __mul__(self, scalar):
        return Field(self.mesh, self.values * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return Field(self.mesh, -self.values)


def zeros(mesh: Mesh, components: int = 1) -> Field:
    if components < 1:
        raise InvalidParameter(MeshError.BAD_COMPONENTS.format(components))
    return Field(mesh, np.zeros(mesh.interior_shape + (components,)))
