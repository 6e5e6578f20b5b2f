# -*- coding: utf-8 -*-
"""Solution history and the direct (full-scan) memory terms.

The history is piecewise constant in time: u(s) = u(t_j) on
[t_j, t_{j+1}), the last interval ending at the evaluation time t. The
kernel is integrated over each interval (product rectangle rule), so the
weight of stamp j is

    beta_j(t) = int_{t_j}^{t_{j+1}} g(t - s) ds
              = I(t - t_j) - I(t - t_{j+1}),   I(x) = int_0^x g,

or dt_j * g(t - s_{j+1/2}) with the midpoint rule. All weights are
positive, and with exact weights sum_j beta_j(t) = int_0^t g.
"""
from enum import Enum

import numpy as np

from memheat.discretization import Field, Mesh, gradient_vector, zeros
from memheat.discretization.operators import laplacian_values
from memheat.exceptions import NonMonotoneTime
from memheat.utils.enums import CustomEnum

_ERR_PFX = "History: "

_INITIAL_CAPACITY = 64
# rows per block when scanning gradient history
_BLOCK = 1024


class MemoryQuadrature(Enum, metaclass=CustomEnum):
    EXACT = "exact"
    MIDPOINT = "midpoint"


class HistoryError:
    """Message Literals used for Errors in the history buffer."""

    NON_MONOTONE = (
        _ERR_PFX + "stamps must increase strictly; got t={0:.17g} after "
        "t={1:.17g}."
    )
    BEFORE_LAST = (
        _ERR_PFX + "cannot evaluate at t={0:.17g} before the last stamp "
        "t={1:.17g}."
    )
    WRONG_FIELD = _ERR_PFX + "snapshot does not match the buffer's mesh."


class _Rows:
    """Append-only 2D array that grows by doubling."""

    def __init__(self, width):
        self._data = np.empty((_INITIAL_CAPACITY, width))
        self.count = 0

    def append(self, row):
        if self.count == self._data.shape[0]:
            grown = np.empty((2 * self._data.shape[0], self._data.shape[1]))
            grown[: self.count] = self._data[: self.count]
            self._data = grown
        self._data[self.count] = row
        self.count += 1

    @property
    def view(self):
        return self._data[: self.count]


class HistoryBuffer:
    """Time stamps with the cached Laplacian and edge gradients of each
    stored snapshot. One buffer belongs to one run."""

    def __init__(self, mesh: Mesh, components: int = 1, quadrature="exact"):
        self.mesh = mesh
        self.components = components
        self.quadrature = MemoryQuadrature.parse(quadrature)
        blank = zeros(mesh, components)
        self._stamps = _Rows(1)
        self._laplacians = _Rows(blank.flat.size)
        self._gradients = _Rows(gradient_vector(blank).size)

    def __len__(self):
        return self._stamps.count

    @property
    def stamps(self) -> np.ndarray:
        return self._stamps.view[:, 0]

    @property
    def laplacians(self) -> np.ndarray:
        return self._laplacians.view

    @property
    def gradients(self) -> np.ndarray:
        return self._gradients.view

    @property
    def last_stamp(self):
        return self.stamps[-1] if len(self) else None

    def push(self, t: float, field: Field) -> "HistoryBuffer":
        if field.mesh != self.mesh or field.components != self.components:
            raise ValueError(HistoryError.WRONG_FIELD)
        if len(self) and not t > self.last_stamp:
            raise NonMonotoneTime(
                HistoryError.NON_MONOTONE.format(t, self.last_stamp)
            )
        grad = gradient_vector(field)
        self._stamps.append(t)
        self._laplacians.append(
            laplacian_values(self.mesh, field.values).ravel()
        )
        self._gradients.append(grad)
        return self

    def weights(self, kernel, t: float) -> np.ndarray:
        """beta_j(t) for every stored stamp."""
        if not len(self):
            return np.zeros(0)
        stamps = self.stamps
        if t < stamps[-1]:
            raise NonMonotoneTime(
                HistoryError.BEFORE_LAST.format(t, stamps[-1])
            )
        ends = np.append(stamps[1:], t)
        if self.quadrature is MemoryQuadrature.MIDPOINT:
            return (ends - stamps) * kernel.value(t - 0.5 * (stamps + ends))
        running = np.append(kernel.integral(t - stamps), 0.0)
        return running[:-1] - running[1:]

    def derivative_weights(self, kernel, t: float) -> np.ndarray:
        """int over each interval of g'(t - s) ds (nonpositive)."""
        if not len(self):
            return np.zeros(0)
        stamps = self.stamps
        ends = np.append(stamps[1:], t)
        if self.quadrature is MemoryQuadrature.MIDPOINT:
            return (ends - stamps) * kernel.derivative(
                t - 0.5 * (stamps + ends)
            )
        values = np.append(kernel.value(t - stamps), kernel.value(0.0))
        return values[:-1] - values[1:]

    def deviation_norms(self, current: Field) -> np.ndarray:
        """||grad u(t) - grad u(t_j)||^2 for every stamp."""
        target = gradient_vector(current)
        out = np.empty(len(self))
        grads = self.gradients
        for start in range(0, len(self), _BLOCK):
            block = grads[start : start + _BLOCK] - target
            out[start : start + _BLOCK] = np.einsum("ij,ij->i", block, block)
        return out * self.mesh.cell_volume


def history_push(buffer: HistoryBuffer, t: float, field: Field):
    return buffer.push(t, field)


def memory_convolution(buffer: HistoryBuffer, kernel, t: float) -> Field:
    """int_0^t g(t-s) lap u(s) ds over the stored history."""
    if not len(buffer):
        return zeros(buffer.mesh, buffer.components)
    flat = buffer.weights(kernel, t) @ buffer.laplacians
    return Field.from_flat(buffer.mesh, flat, buffer.components)


def g_circ_grad(buffer: HistoryBuffer, kernel, t: float, current: Field):
    """(g o grad u)(t) = int_0^t g(t-s) ||grad u(t) - grad u(s)||^2 ds"""
    if not len(buffer):
        return 0.0
    return float(buffer.weights(kernel, t) @ buffer.deviation_norms(current))


def g_prime_circ_grad(buffer: HistoryBuffer, kernel, t, current: Field):
    """(g' o grad u)(t), the same modulus with g' in place of g."""
    if not len(buffer):
        return 0.0
    weights = buffer.derivative_weights(kernel, t)
    return float(weights @ buffer.deviation_norms(current))


def kernel_weight_sum(buffer: HistoryBuffer, kernel, t: float) -> float:
    """sum_j beta_j(t); equals int_0^t g for exact weights."""
    return float(np.sum(buffer.weights(kernel, t)))


class DirectMemory:
    """Memory terms of one run by a full scan of the history."""

    mode = "direct"

    def __init__(self, kernel, mesh, components=1, quadrature="exact"):
        self.kernel = kernel
        self.buffer = HistoryBuffer(mesh, components, quadrature)

    def __len__(self):
        return len(self.buffer)

    def push(self, t, field):
        self.buffer.push(t, field)

    def convolution(self, t) -> np.ndarray:
        return memory_convolution(self.buffer, self.kernel, t).flat

    def g_circ_grad(self, t, current) -> float:
        return g_circ_grad(self.buffer, self.kernel, t, current)

    def g_prime_circ_grad(self, t, current) -> float:
        return g_prime_circ_grad(self.buffer, self.kernel, t, current)

    def weight_sum(self, t) -> float:
        return kernel_weight_sum(self.buffer, self.kernel, t)
