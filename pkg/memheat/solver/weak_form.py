# -*- coding: utf-8 -*-
"""Weak-form residual of a completed run.

For a test function phi (a Dirichlet sine mode, so -lap_h phi =
lam phi exactly) and an end time s the residual is

    int_0^s <A Phi(u_t), phi> dt + lam int_0^s <u, phi> dt
        - lam int_0^s int_0^t g(t - tau) <u(tau), phi> dtau dt.

u is reconstructed piecewise linearly between stamps. The double
integral is rewritten as int_0^s <u(tau), phi> I(s - tau) dtau with
I(x) = int_0^x g and evaluated by 4-point Gauss-Legendre on every
interval.
"""
import itertools
import logging

import numpy as np

from memheat.solver.stepper import phi_scale

logger = logging.getLogger(__name__)

GAUSS_POINTS = 4
LOW_MODES = 4
CHECKPOINTS = 8


def default_test_functions(dim: int):
    """Low-frequency sine modes: k = 1..4 in 1D, (k, l) in {1, 2}^2 in
    2D."""
    if dim == 1:
        return [(k,) for k in range(1, LOW_MODES + 1)]
    return list(itertools.product(range(1, 3), repeat=dim))


def _mode(mesh, index):
    """Nodal values of the sine mode and its discrete eigenvalue."""
    shape = np.ones(mesh.interior_shape)
    eigenvalue = 0.0
    for axis, (k, x) in enumerate(zip(index, mesh.grid())):
        length, h = mesh.extent[axis], mesh.spacing[axis]
        shape = shape * np.sin(k * np.pi * x / length)
        eigenvalue += 4.0 / h**2 * np.sin(k * np.pi * h / (2 * length)) ** 2
    return shape, eigenvalue


def _memory_term(t, projections, kernel, end):
    """int_0^{t_end} a(tau) I(t_end - tau) dtau, a piecewise linear."""
    if end == 0 or kernel is None:
        return np.zeros(projections.shape[1:])
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_POINTS)
    lo, hi = t[:end], t[1 : end + 1]
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    # (intervals, points)
    tau = mid[:, None] + half[:, None] * nodes[None, :]
    frac = (tau - lo[:, None]) / (hi - lo)[:, None]
    left, right = projections[:end, None], projections[1 : end + 1, None]
    values = (1.0 - frac)[..., None] * left + frac[..., None] * right
    memory = kernel.integral(t[end] - tau)
    quad = (half[:, None] * weights[None, :] * memory)[..., None] * values
    return quad.sum(axis=(0, 1))


def weak_residual(trace, test_functions=None, checkpoints=CHECKPOINTS):
    """Largest |residual| over the test functions, the components and
    `checkpoints` end times spread over the stamps. Needs a trace with
    snapshots."""
    snapshots = trace.require_snapshots()
    if len(snapshots) < 2:
        return 0.0
    mesh = snapshots[0].mesh
    components = snapshots[0].components
    nodes = mesh.node_count
    t = trace.t
    steps = np.diff(t)
    values = np.stack(
        [s.values.reshape(nodes, components) for s in snapshots]
    )
    velocities = np.diff(values, axis=0) / steps[:, None, None]

    fluxes = np.empty_like(velocities)
    for k, v in enumerate(velocities):
        scale, _ = phi_scale(v, trace.m, trace.epsilon)
        a = (
            np.eye(components)
            if trace.matrix_a is None
            else trace.matrix_a.at(t[k + 1])
        )
        fluxes[k] = (scale[:, None] * v) @ a.T

    ends = np.unique(
        np.linspace(1, t.size - 1, min(checkpoints, t.size - 1)).round()
    ).astype(int)
    functions = test_functions or default_test_functions(mesh.dim)
    worst = 0.0
    for index in functions:
        shape, eigenvalue = _mode(mesh, index)
        phi = shape.ravel() * mesh.cell_volume
        # <u(t_k), phi> and <A Phi(v_k), phi> per component
        projections = np.einsum("kni,n->ki", values, phi)
        forcing = np.einsum("kni,n->ki", fluxes, phi)
        damping = np.cumsum(steps[:, None] * forcing, axis=0)
        trapezoid = np.cumsum(
            0.5 * steps[:, None] * (projections[1:] + projections[:-1]),
            axis=0,
        )
        for end in ends:
            memory = _memory_term(t, projections, trace.kernel, end)
            residual = (
                damping[end - 1]
                + eigenvalue * trapezoid[end - 1]
                - eigenvalue * memory
            )
            worst = max(worst, float(np.max(np.abs(residual))))
    logger.debug("weak residual %.3e over %d modes", worst, len(functions))
    return worst
