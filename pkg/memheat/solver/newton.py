# -*- coding: utf-8 -*-
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from memheat.exceptions import StepFailed

logger = logging.getLogger(__name__)

_ERR_PFX = "Newton: "

ARMIJO = 1e-4
MIN_DAMPING = 2.0**-20


class NewtonError:
    """Message Literals used for Errors in damped Newton."""

    NOT_CONVERGED = (
        _ERR_PFX + "no convergence after {0} iterations; |R| = {1:.3e} "
        "> {2:.3e}."
    )
    STALLED = (
        _ERR_PFX + "line search stalled at iteration {0}; |R| = {1:.3e}."
    )
    NOT_FINITE = _ERR_PFX + "non-finite residual at iteration {0}."


@dataclass
class NewtonResult:
    x: np.ndarray
    iterations: int
    residual_norm: float
    target: float
    history: List[float] = field(default_factory=list)


def _norm(r):
    return float(np.max(np.abs(r))) if r.size else 0.0


def damped_newton(
    residual: Callable,
    solve_jacobian: Callable,
    x0,
    tol: float = 1e-10,
    max_iter: int = 50,
    scale: float = 0.0,
    callback: Optional[Callable] = None,
) -> NewtonResult:
    """Newton's method with Armijo backtracking on the max-norm residual.

    `solve_jacobian(x, r)` returns d with J(x) d = r; the update is
    x - lambda d with lambda halved until
    |R(x - lambda d)| <= (1 - 1e-4 lambda)|R(x)|. Converged when
    |R| <= tol * max(|R(x0)|, scale). `callback(x)` sees every iterate.
    Raises StepFailed with the residual history as diagnostics.
    """
    x = np.array(x0, dtype=float)
    r = residual(x)
    norm = _norm(r)
    target = tol * max(norm, scale)
    history = [norm]

    def fail(message, iteration):
        raise StepFailed(
            message,
            diagnostics={
                "iterations": iteration,
                "residual_history": list(history),
                "target": target,
            },
        )

    if callback is not None:
        callback(x)
    for iteration in range(max_iter + 1):
        if not np.isfinite(norm):
            fail(NewtonError.NOT_FINITE.format(iteration), iteration)
        if norm <= target:
            logger.debug(
                "newton converged in %d iterations, |R| = %.3e",
                iteration,
                norm,
            )
            return NewtonResult(x, iteration, norm, target, history)
        if iteration == max_iter:
            break
        direction = solve_jacobian(x, r)
        damping = 1.0
        while True:
            trial = x - damping * direction
            trial_r = residual(trial)
            trial_norm = _norm(trial_r)
            if trial_norm <= (1.0 - ARMIJO * damping) * norm:
                break
            damping *= 0.5
            if damping < MIN_DAMPING:
                fail(NewtonError.STALLED.format(iteration, norm), iteration)
        x, r, norm = trial, trial_r, trial_norm
        history.append(norm)
        if callback is not None:
            callback(x)
    fail(
        NewtonError.NOT_CONVERGED.format(max_iter, norm, target), max_iter
    )
