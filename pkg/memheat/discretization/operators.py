# -*- coding: utf-8 -*-
"""Finite-difference operators with homogeneous Dirichlet boundary.

The Laplacian is the standard (2d+1)-point stencil and the gradient uses
forward differences on every cell edge, so the discrete Green identity
-<lap u, u> = ||grad u||^2 holds exactly.
"""
from typing import Tuple

import numpy as np
from scipy import sparse

from memheat.discretization.mesh import Field, Mesh
from memheat.exceptions import InvalidParameter

_ERR_PFX = "Operators: "


class OperatorError:
    """Message Literals used for Errors in the operators."""

    BAD_EXPONENT = _ERR_PFX + "m must be >= 2. Got {0}."


def _padded(field: Field) -> np.ndarray:
    pad = [(1, 1)] * field.mesh.dim + [(0, 0)]
    return np.pad(field.values, pad)


def laplacian_values(mesh: Mesh, values: np.ndarray) -> np.ndarray:
    """Stencil applied to a raw `interior_shape + (n_c,)` array."""
    padded = np.pad(values, [(1, 1)] * mesh.dim + [(0, 0)])
    out = np.zeros_like(values)
    for axis, h in enumerate(mesh.spacing):
        center = [slice(1, -1)] * mesh.dim + [slice(None)]
        lower, upper = list(center), list(center)
        lower[axis] = slice(None, -2)
        upper[axis] = slice(2, None)
        out += (
            padded[tuple(upper)]
            - 2.0 * padded[tuple(center)]
            + padded[tuple(lower)]
        ) / h**2
    return out


def apply_laplacian(field: Field) -> Field:
    return Field(field.mesh, laplacian_values(field.mesh, field.values))


def edge_gradients(field: Field) -> Tuple[np.ndarray, ...]:
    """Forward differences on all edges, one array per axis.

    Along its own axis an array has `cells` entries (boundary edges
    included); across the other axes it covers the interior nodes.
    """
    padded = _padded(field)
    grads = []
    for axis, h in enumerate(field.mesh.spacing):
        index = [slice(1, -1)] * field.mesh.dim + [slice(None)]
        index[axis] = slice(None)
        grads.append(np.diff(padded[tuple(index)], axis=axis) / h)
    return tuple(grads)


def grad_sq_norm(field: Field) -> float:
    """Discrete int |grad u|^2, summed over components."""
    total = sum(float(np.sum(g * g)) for g in edge_gradients(field))
    return total * field.mesh.cell_volume


def inner(a: Field, b: Field) -> float:
    """Discrete L2 inner product."""
    return float(np.sum(a.values * b.values)) * a.mesh.cell_volume


def pointwise_norm(field: Field) -> np.ndarray:
    """|v| at each node, the Euclidean norm across components."""
    return np.sqrt(np.sum(field.values**2, axis=-1))


def l2_norm_pow(field: Field, m: float) -> float:
    """Discrete int |v|^m."""
    if m < 2:
        raise InvalidParameter(OperatorError.BAD_EXPONENT.format(m))
    return float(np.sum(pointwise_norm(field) ** m)) * field.mesh.cell_volume


def laplacian_matrix(mesh: Mesh, components: int = 1) -> sparse.csr_matrix:
    """Sparse Laplacian in node-major, component-minor ordering."""
    axes = []
    for n, h in zip(mesh.interior_shape, mesh.spacing):
        axes.append(
            sparse.diags(
                [np.ones(n - 1), -2.0 * np.ones(n), np.ones(n - 1)],
                [-1, 0, 1],
            )
            / h**2
        )
    if mesh.dim == 1:
        nodes = axes[0]
    else:
        eye_x = sparse.identity(mesh.interior_shape[0])
        eye_y = sparse.identity(mesh.interior_shape[1])
        nodes = sparse.kron(axes[0], eye_y) + sparse.kron(eye_x, axes[1])
    lap = sparse.kron(nodes, sparse.identity(components)).tocsr()
    # kron stores the zeros of the identity blocks
    lap.eliminate_zeros()
    return lap


def gradient_vector(field: Field) -> np.ndarray:
    """All edge gradients of `field` flattened into one vector.

    ||grad u||^2 = cell_volume * |gradient_vector(u)|^2.
    """
    return np.concatenate([g.ravel() for g in edge_gradients(field)])
