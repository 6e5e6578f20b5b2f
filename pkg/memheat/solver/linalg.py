# -*- coding: utf-8 -*-
"""Linear solves for the Newton Jacobian.

1D systems in node-major order are banded with half-bandwidth n_c and go
to LAPACK's banded solver. 2D systems use GMRES with an incomplete-LU
preconditioner and fall back to a sparse direct solve.
"""
import logging

import numpy as np
from scipy import linalg, sparse
from scipy.sparse import linalg as sparse_linalg

logger = logging.getLogger(__name__)

GMRES_RTOL = 1e-12
GMRES_RESTART = 50
GMRES_MAXITER = 20

_ERR_PFX = "Linalg: "


class LinalgError:
    """Message Literals used for Errors in the linear solves."""

    OUT_OF_BAND = (
        _ERR_PFX + "entry ({0}, {1}) = {2!r} lies outside bandwidth {3}."
    )


def banded_form(matrix, bandwidth: int) -> np.ndarray:
    """LAPACK (l + u + 1, n) storage of a matrix with l = u = bandwidth.

    Stored zeros outside the band are dropped; a nonzero there is a
    ValueError.
    """
    coo = sparse.coo_matrix(matrix)
    n = coo.shape[0]
    row, col, data = coo.row, coo.col, coo.data
    outside = np.abs(row - col) > bandwidth
    if np.any(data[outside] != 0.0):
        k = np.flatnonzero(outside & (data != 0.0))[0]
        raise ValueError(
            LinalgError.OUT_OF_BAND.format(
                int(row[k]), int(col[k]), float(data[k]), bandwidth
            )
        )
    inside = ~outside
    ab = np.zeros((2 * bandwidth + 1, n))
    np.add.at(
        ab,
        (bandwidth + row[inside] - col[inside], col[inside]),
        data[inside],
    )
    return ab


def banded_solve(matrix, rhs, bandwidth: int) -> np.ndarray:
    ab = banded_form(matrix, bandwidth)
    return linalg.solve_banded((bandwidth, bandwidth), ab, rhs)


def iterative_solve(matrix, rhs) -> np.ndarray:
    """ILU-preconditioned GMRES to 1e-12 relative residual."""
    matrix = sparse.csc_matrix(matrix)
    rhs_norm = np.linalg.norm(rhs)
    if rhs_norm == 0.0:
        return np.zeros_like(rhs)
    try:
        ilu = sparse_linalg.spilu(matrix, drop_tol=1e-6, fill_factor=20)
        preconditioner = sparse_linalg.LinearOperator(
            matrix.shape, ilu.solve
        )
    except RuntimeError:
        logger.debug("incomplete LU failed; using unpreconditioned GMRES")
        preconditioner = None
    solution, info = sparse_linalg.gmres(
        matrix,
        rhs,
        rtol=GMRES_RTOL,
        atol=0.0,
        restart=GMRES_RESTART,
        maxiter=GMRES_MAXITER,
        M=preconditioner,
    )
    residual = np.linalg.norm(matrix @ solution - rhs) / rhs_norm
    if info != 0 or not residual <= 10.0 * GMRES_RTOL:
        logger.warning(
            "GMRES stopped with info=%d, relative residual %.3e; "
            "falling back to a direct solve",
            info,
            residual,
        )
        return sparse_linalg.spsolve(matrix, rhs)
    return solution


def solve_linear(matrix, rhs, dim: int, bandwidth: int) -> np.ndarray:
    if dim == 1:
        return banded_solve(matrix, rhs, bandwidth)
    return iterative_solve(matrix, rhs)
