# -*- coding: utf-8 -*-
"""Energy functional and the checks built on it.

E(t) = 1/2 (g o grad u)(t) + 1/2 (1 - int_0^t g) ||grad u(t)||^2 and its
dissipation identity

    E'(t) = -D(t) - 1/2 g(t) ||grad u||^2 + 1/2 (g' o grad u)(t).

E' is always taken from finite differences of the recorded energy; the
identity is checked against it, never used to define it.
"""
import logging
from typing import NamedTuple, Optional

import numpy as np
from scipy import integrate

from memheat.analysis.trace import EnergyTrace, TracePoint
from memheat.exceptions import Indeterminate, InvalidParameter

logger = logging.getLogger(__name__)

_ERR_PFX = "Analysis: "

# stamps with |E'| below this times E(0)/dt are too close to equilibrium
EQUILIBRIUM_FLOOR = 1e-13
MONOTONE_TOL = 1e-10
# share of the horizon the dissipation residual skips as startup layer
STARTUP_SHARE = 0.01


class AnalysisError:
    """Message Literals used for Errors in the energy analysis."""

    TOO_FEW = _ERR_PFX + "{0} needs at least {1} stamps. Got {2}."
    ALL_EXCLUDED = (
        _ERR_PFX + "every one of the {0} stamps has |E'| below the "
        "equilibrium floor; k0 is indeterminate."
    )
    NO_CERTIFICATE = _ERR_PFX + "{0} needs a kernel certificate."


class DissipationResidual(NamedTuple):
    absolute: float
    relative: float
    ratio: Optional[float] = None


class K0Ratio(NamedTuple):
    k0: float
    excluded: int
    considered: int


class EnergyIntegral(NamedTuple):
    total: float
    half: float
    # (int_0^T E - int_0^{T/2} E) / int_0^T E
    tail_increment: float


def energy(point: TracePoint, kernel=None) -> float:
    """E at one stamp. int_0^t g comes from the point when recorded,
    else from the kernel."""
    int_g = point.int_g
    if int_g is None:
        int_g = 0.0 if kernel is None else float(kernel.integral(point.t))
    return 0.5 * point.g_circ_grad + 0.5 * (1.0 - int_g) * point.grad_sq


def energy_derivative(trace: EnergyTrace) -> np.ndarray:
    """Secant slopes of E: centred over two steps inside, one-sided at
    the ends."""
    if len(trace) < 2:
        raise InvalidParameter(
            AnalysisError.TOO_FEW.format("energy_derivative", 2, len(trace))
        )
    t, e = trace.t, trace.energy
    out = np.empty_like(e)
    out[1:-1] = (e[2:] - e[:-2]) / (t[2:] - t[:-2])
    out[0] = (e[1] - e[0]) / (t[1] - t[0])
    out[-1] = (e[-1] - e[-2]) / (t[-1] - t[-2])
    return out


def _local_steps(t):
    steps = np.diff(t)
    out = np.empty_like(t)
    out[0], out[-1] = steps[0], steps[-1]
    out[1:-1] = 0.5 * (steps[:-1] + steps[1:])
    return out


def dissipation_rhs(trace: EnergyTrace) -> np.ndarray:
    """Right-hand side of the identity at the interior stamps.

    D at t_k is the step-length weighted mean of the dissipation of the
    two steps meeting there, matching the centred E'.
    """
    steps = np.diff(trace.t)
    d = trace.dissipation
    damping = (steps[:-1] * d[1:-1] + steps[1:] * d[2:]) / (
        steps[:-1] + steps[1:]
    )
    inner = slice(1, -1)
    return (
        -damping
        - 0.5 * trace.g_value[inner] * trace.grad_sq[inner]
        + 0.5 * trace.g_prime_circ_grad[inner]
    )


def _absolute_residual(trace, startup):
    if len(trace) < 3:
        raise InvalidParameter(
            AnalysisError.TOO_FEW.format(
                "dissipation_residual", 3, len(trace)
            )
        )
    slope = energy_derivative(trace)[1:-1]
    gap = np.abs(slope - dissipation_rhs(trace))
    keep = trace.t[1:-1] >= startup
    if not np.any(keep):
        keep[:] = True
    residual = float(np.max(gap[keep]))
    return residual, float(np.max(np.abs(slope[keep])))


def dissipation_residual(
    trace: EnergyTrace, refined: EnergyTrace = None, startup=None
) -> DissipationResidual:
    """max |E' - RHS| over the interior stamps, also relative to max |E'|.

    Stamps before `startup` (default STARTUP_SHARE of the horizon) are
    left out: the initial layer decays on a scale dt does not resolve.
    With `refined` (the same problem at dt/2 and h/2) the ratio of the
    two absolute residuals over the same stamps range is reported too.
    """
    if startup is None:
        startup = STARTUP_SHARE * trace.t_final
    absolute, scale = _absolute_residual(trace, startup)
    relative = absolute / scale if scale > 0.0 else absolute
    ratio = None
    if refined is not None:
        finer, _ = _absolute_residual(refined, startup)
        ratio = absolute / finer if finer > 0.0 else float("inf")
    logger.debug(
        "dissipation residual %.3e (relative %.3e, ratio %s) from t=%g",
        absolute,
        relative,
        ratio,
        startup,
    )
    return DissipationResidual(absolute, relative, ratio)


def k0_ratio(trace: EnergyTrace, certificate=None) -> K0Ratio:
    """Empirical k0 = sup xi (g o grad u) / (-E')^(1/(2p-1)).

    Stamps with E' >= 0 or |E'| < 1e-13 E(0)/dt_local are excluded; the
    counts of excluded and considered stamps are returned with k0.
    """
    certificate = certificate or trace.certificate
    if certificate is None:
        raise InvalidParameter(
            AnalysisError.NO_CERTIFICATE.format("k0_ratio")
        )
    slope = energy_derivative(trace)
    floor = EQUILIBRIUM_FLOOR * trace.e0 / _local_steps(trace.t)
    keep = (slope < 0.0) & (np.abs(slope) >= floor)
    considered = int(np.count_nonzero(keep))
    if not considered:
        raise Indeterminate(AnalysisError.ALL_EXCLUDED.format(len(trace)))
    exponent = 1.0 / (2.0 * certificate.p - 1.0)
    xi = certificate.xi(trace.t[keep])
    ratio = xi * trace.g_circ_grad[keep] / (-slope[keep]) ** exponent
    k0 = float(np.max(ratio))
    logger.debug("k0 = %.6g over %d stamps", k0, considered)
    return K0Ratio(k0, len(trace) - considered, considered)


def energy_integral(trace: EnergyTrace) -> EnergyIntegral:
    """Trapezoid int_0^T E, the same up to T/2 and the share of the
    total gained over [T/2, T]."""
    if len(trace) < 2:
        return EnergyIntegral(0.0, 0.0, 0.0)
    t, e = trace.t, trace.energy
    total = float(integrate.trapezoid(e, t))
    middle = 0.5 * trace.t_final
    head = t < middle
    t_half = np.append(t[head], middle)
    e_half = np.append(e[head], np.interp(middle, t, e))
    half = float(integrate.trapezoid(e_half, t_half))
    tail = (total - half) / total if total > 0.0 else 0.0
    return EnergyIntegral(total, half, tail)


def is_monotone(trace: EnergyTrace, tol: float = MONOTONE_TOL) -> bool:
    """E(t_{k+1}) <= E(t_k) + tol E(0) at every step."""
    return bool(np.all(np.diff(trace.energy) <= tol * trace.e0))
