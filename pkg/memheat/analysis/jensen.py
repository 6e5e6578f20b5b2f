# -*- coding: utf-8 -*-
"""Jensen's inequality for the concave map s -> s^(1/p):

    (1/k) int f^(1/p) h  <=  ((1/k) int f h)^(1/p),   k = int h > 0.
"""
from typing import Tuple

import numpy as np

from memheat.exceptions import InvalidParameter

_ERR_PFX = "Jensen: "

JENSEN_TOL = 1e-12


class JensenError:
    """Message Literals used for Errors in the Jensen check."""

    SHAPE = _ERR_PFX + "f, h and weights must have one shape. Got {0}."
    NEGATIVE = _ERR_PFX + "f and h must be >= 0."
    BAD_MASS = _ERR_PFX + "int h must be positive. Got {0}."
    BAD_P = _ERR_PFX + "p must be > 1. Got {0}."


def jensen_sides(f, h, p: float, weights=None) -> Tuple[float, float]:
    """Both sides of the inequality for samples of f and h.

    `weights` are quadrature weights of the samples (1 by default).
    """
    f = np.asarray(f, dtype=float)
    h = np.asarray(h, dtype=float)
    weights = np.ones_like(f) if weights is None else np.asarray(weights)
    if not f.shape == h.shape == weights.shape:
        raise InvalidParameter(
            JensenError.SHAPE.format((f.shape, h.shape, weights.shape))
        )
    if not p > 1.0:
        raise InvalidParameter(JensenError.BAD_P.format(p))
    if np.any(f < 0.0) or np.any(h < 0.0):
        raise InvalidParameter(JensenError.NEGATIVE)
    k = float(np.sum(h * weights))
    if not k > 0.0:
        raise InvalidParameter(JensenError.BAD_MASS.format(k))
    lhs = float(np.sum(f ** (1.0 / p) * h * weights)) / k
    rhs = (float(np.sum(f * h * weights)) / k) ** (1.0 / p)
    return lhs, rhs


def jensen_check(f, h, p: float, weights=None) -> bool:
    lhs, rhs = jensen_sides(f, h, p, weights)
    return lhs <= rhs + JENSEN_TOL
