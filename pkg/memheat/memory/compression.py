# -*- coding: utf-8 -*-
"""Sum-of-exponentials compression of a kernel and the O(K) history.

g(t) ~ sum_m w_m exp(-r_m t) with w_m, r_m > 0 on [0, T]. For such a
kernel the product-rectangle memory terms obey a per-mode recurrence, so
a step costs O(K) field operations instead of a scan of the history.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from memheat.discretization import Field, Mesh, gradient_vector, zeros
from memheat.discretization.operators import laplacian_values
from memheat.exceptions import (
    CompressionFailed,
    InvalidParameter,
    NonMonotoneTime,
)
from memheat.kernel.relaxation import KernelFamily
from memheat.memory.history import HistoryError

logger = logging.getLogger(__name__)

_ERR_PFX = "Compression: "

FIT_NODES = 512
CHECK_NODES = 4001
REWEIGHT_ROUNDS = 6
# kernel values below this fraction of g(0) do not enter the relative fit
NEGLIGIBLE = 1e-14
# weight of the g(0)-scaled error next to the relative one, raised in
# turn until the tolerance holds; inf fits the scaled error alone
HEAD_WEIGHTS = (0.0, 1e1, 1e2, 1e3, 1e4, np.inf)


class CompressionError:
    """Message Literals used for Errors in kernel compression."""

    BAD_MODES = _ERR_PFX + "need at least one mode. Got K={0}."
    BAD_HORIZON = _ERR_PFX + "horizon must be positive. Got T={0}."
    BAD_TOL = _ERR_PFX + "tolerance must be positive. Got {0}."
    NOT_MET = (
        _ERR_PFX + "{0} with K={1} on [0, {2:g}] reaches error {3:.3g} > "
        "tol {4:.3g}."
    )


@dataclass(frozen=True, eq=False)
class CompressedKernel:
    weights: np.ndarray
    rates: np.ndarray
    horizon: float
    # sup |g_K - g| / g(0) on the check nodes of [0, horizon]
    error: float
    # sup |g_K / g - 1| on the same nodes
    rel_error: float

    @property
    def modes(self) -> int:
        return self.weights.size

    def value(self, t):
        arr = np.asarray(t, dtype=float)
        out = np.exp(-np.multiply.outer(arr, self.rates)) @ self.weights
        return out if arr.ndim else float(out)

    def integral(self, t):
        arr = np.asarray(t, dtype=float)
        decay = -np.expm1(-np.multiply.outer(arr, self.rates))
        out = decay @ (self.weights / self.rates)
        return out if arr.ndim else float(out)


def _fit_nodes(horizon, count):
    start = min(1e-3, horizon / 10.0)
    return np.concatenate([[0.0], np.geomspace(start, horizon, count - 1)])


def _model(params, nodes):
    k = params.size // 2
    weights, rates = np.exp(params[:k]), np.exp(params[k:])
    basis = np.exp(-np.multiply.outer(nodes, rates))
    return basis, weights, rates


def _laplace_weights(kernel, rates):
    """Trapezoid rule in x = log r on a (1+t)^-nu = int e^(-r t) dmu(r).

    dmu(r) = a r^(nu-1) e^(-r) dr / Gamma(nu); with r = e^x the density
    is a exp(nu x - e^x) / Gamma(nu).
    """
    logs = np.log(rates)
    step = logs[1] - logs[0] if rates.size > 1 else 1.0
    return (
        kernel.a
        * step
        * np.exp(kernel.nu * logs - rates - special.gammaln(kernel.nu))
    )


def _error_scale(target, g0, head):
    """Factor on g_K - g per node: 1/g + head/g(0)."""
    if np.isinf(head):
        return np.full_like(target, 1.0 / g0)
    return 1.0 / target + head / g0


def _initial_guess(kernel, horizon, modes, nodes, target):
    g0 = kernel.g0
    initial_rate = max(-kernel.derivative(0.0) / g0, 1.0 / horizon)
    rates = np.geomspace(0.5 / horizon, 20.0 * initial_rate, modes)
    if kernel.family is KernelFamily.POWER_LAW:
        weights = _laplace_weights(kernel, rates)
    else:
        basis = np.exp(-np.multiply.outer(nodes, rates)) / target[:, None]
        weights, _ = optimize.nnls(basis, np.ones_like(target))
    floor = 1e-8 * max(float(np.max(weights)), g0)
    weights = np.where(weights > floor, weights, floor)
    return np.concatenate([np.log(weights), np.log(rates)])


def _refine(params, nodes, target, scale, emphasis, bounds):
    def residual(p):
        basis, weights, _ = _model(p, nodes)
        return emphasis * scale * (basis @ weights - target)

    def jacobian(p):
        basis, weights, rates = _model(p, nodes)
        d_logw = basis * weights * scale[:, None]
        d_logr = -d_logw * rates * nodes[:, None]
        return emphasis[:, None] * np.hstack([d_logw, d_logr])

    result = optimize.least_squares(
        residual,
        params,
        jac=jacobian,
        bounds=bounds,
        x_scale="jac",
        ftol=1e-15,
        xtol=1e-15,
        gtol=1e-15,
        max_nfev=400,
    )
    return result.x


def _reweighted_fit(params, nodes, target, scale, bounds):
    """Least squares with Lawson reweighting towards the worst nodes;
    returns the round with the smallest sup of the scaled misfit."""
    emphasis = np.ones_like(nodes)
    best = None
    for _ in range(REWEIGHT_ROUNDS):
        params = _refine(params, nodes, target, scale, emphasis, bounds)
        basis, weights, _ = _model(params, nodes)
        misfit = np.abs(scale * (basis @ weights - target))
        worst = float(misfit.max())
        if best is None or worst < best[0]:
            best = (worst, params)
        if worst == 0.0:
            break
        emphasis = emphasis * np.sqrt(misfit / worst)
        emphasis = np.maximum(emphasis / emphasis.max(), 1e-3)
    return best[1]


def _measure(kernel, weights, rates, horizon):
    nodes = _fit_nodes(horizon, CHECK_NODES)
    exact = kernel.value(nodes)
    approx = np.exp(-np.multiply.outer(nodes, rates)) @ weights
    absolute = float(np.max(np.abs(approx - exact))) / kernel.g0
    usable = exact > NEGLIGIBLE * kernel.g0
    relative = float(
        np.max(np.abs(approx[usable] / exact[usable] - 1.0), initial=0.0)
    )
    return absolute, relative


def compress_kernel(kernel, horizon, modes=12, tol=1e-6) -> CompressedKernel:
    """Fit g on [0, horizon] by `modes` decaying exponentials.

    Rates start log-spaced between 1/(2T) and twenty times the initial
    decay rate -g'(0)/g(0). Power-law weights start from the trapezoid
    rule on the Laplace representation of the kernel, other families from
    non-negative least squares.

    The fit is refined by bounded nonlinear least squares on
    (log w, log r), first against the relative error, which keeps the
    long-lag tail accurate. While the sup error |g_K - g| / g(0) stays
    above `tol` the g(0)-scaled error gets more weight (HEAD_WEIGHTS).
    Raises CompressionFailed when no weighting meets `tol`.
    """
    if modes < 1:
        raise InvalidParameter(CompressionError.BAD_MODES.format(modes))
    if not horizon > 0:
        raise InvalidParameter(CompressionError.BAD_HORIZON.format(horizon))
    if not tol > 0:
        raise InvalidParameter(CompressionError.BAD_TOL.format(tol))

    family = kernel.family
    if family is KernelFamily.MEMORYLESS:
        return CompressedKernel(np.zeros(0), np.zeros(0), horizon, 0.0, 0.0)
    if family is KernelFamily.PURE_EXP:
        return CompressedKernel(
            np.array([kernel.a]), np.array([kernel.b]), horizon, 0.0, 0.0
        )

    g0 = kernel.g0
    nodes = _fit_nodes(horizon, FIT_NODES)
    target = kernel.value(nodes)
    keep = target > NEGLIGIBLE * g0
    nodes, target = nodes[keep], target[keep]

    params = _initial_guess(kernel, horizon, modes, nodes, target)
    k = modes
    rate_lo = np.log(1e-3 / horizon)
    rate_hi = np.log(1e3 * np.exp(params[-1]))
    bounds = (
        np.concatenate([np.full(k, -745.0), np.full(k, rate_lo)]),
        np.concatenate([np.full(k, np.log(10.0 * g0)), np.full(k, rate_hi)]),
    )
    params = np.clip(params, bounds[0] + 1e-12, bounds[1] - 1e-12)

    best = None
    for head in HEAD_WEIGHTS:
        scale = _error_scale(target, g0, head)
        params = _reweighted_fit(params, nodes, target, scale, bounds)
        _, weights, rates = _model(params, nodes)
        error, relative = _measure(kernel, weights, rates, horizon)
        logger.debug(
            "head weight %g: error %.3g, relative %.3g",
            head,
            error,
            relative,
        )
        if best is None or error < best[0]:
            best = (error, relative, weights, rates, head)
        if error <= tol:
            break

    error, relative, weights, rates, head = best
    logger.info(
        "compressed %s with K=%d on [0, %g]: sup error %.3g of g(0), "
        "relative %.3g (head weight %g)",
        kernel.describe(),
        k,
        horizon,
        error,
        relative,
        head,
    )
    if error > tol:
        raise CompressionFailed(
            CompressionError.NOT_MET.format(
                kernel.describe(), k, horizon, error, tol
            ),
            error=error,
        )
    order = np.argsort(rates)
    return CompressedKernel(
        weights[order], rates[order], horizon, error, relative
    )


class CompressedHistory:
    """Memory terms of one run from per-mode running sums.

    With exact product weights for the compressed kernel, the weight of a
    past stamp in mode m decays by exp(-r_m dt) per step and a new stamp
    enters with (w_m/r_m)(1 - exp(-r_m dt)). Besides the convolution the
    modes carry sum beta, sum beta grad u and sum beta |grad u|^2, which
    give (g o grad u) and (g' o grad u) without the history.
    """

    mode = "compressed"

    def __init__(self, compressed: CompressedKernel, mesh: Mesh, components=1):
        self.compressed = compressed
        self.mesh = mesh
        self.components = components
        blank = zeros(mesh, components)
        k = compressed.modes
        self._conv = np.zeros((k, blank.flat.size))
        self._grad = np.zeros((k, gradient_vector(blank).size))
        self._weight = np.zeros(k)
        self._grad_sq = np.zeros(k)
        self._count = 0
        self._last_t = None
        self._last_lap = None
        self._last_grad = None

    def __len__(self):
        return self._count

    def _advance(self, t):
        """Per-mode (decay, entry weight) from the last stamp to t."""
        if t < self._last_t:
            raise NonMonotoneTime(
                HistoryError.BEFORE_LAST.format(t, self._last_t)
            )
        step = t - self._last_t
        rates = self.compressed.rates
        decay = np.exp(-rates * step)
        entry = self.compressed.weights / rates * -np.expm1(-rates * step)
        return decay, entry

    def _state(self, t):
        decay, entry = self._advance(t)
        last_sq = float(self._last_grad @ self._last_grad)
        return (
            decay * self._weight + entry,
            decay[:, None] * self._grad + np.outer(entry, self._last_grad),
            decay * self._grad_sq + entry * last_sq,
        )

    def push(self, t, field: Field):
        lap = laplacian_values(self.mesh, field.values).ravel()
        grad = gradient_vector(field)
        if self._count:
            if not t > self._last_t:
                raise NonMonotoneTime(
                    HistoryError.NON_MONOTONE.format(t, self._last_t)
                )
            decay, entry = self._advance(t)
            self._conv = decay[:, None] * self._conv + np.outer(
                entry, self._last_lap
            )
            self._weight, self._grad, self._grad_sq = self._state(t)
        self._last_t, self._last_lap, self._last_grad = t, lap, grad
        self._count += 1

    def convolution(self, t) -> np.ndarray:
        if not self._count:
            return np.zeros(self._conv.shape[1])
        decay, entry = self._advance(t)
        return decay @ self._conv + entry.sum() * self._last_lap

    def _moduli(self, t, current):
        """Per-mode sum_j beta_j^m ||grad U - grad u_j||^2."""
        weight, grad, grad_sq = self._state(t)
        target = gradient_vector(current)
        raw = weight * (target @ target) - 2.0 * (grad @ target) + grad_sq
        return np.maximum(raw, 0.0) * self.mesh.cell_volume

    def g_circ_grad(self, t, current) -> float:
        if not self._count:
            return 0.0
        return float(np.sum(self._moduli(t, current)))

    def g_prime_circ_grad(self, t, current) -> float:
        if not self._count:
            return 0.0
        return -float(self.compressed.rates @ self._moduli(t, current))

    def weight_sum(self, t) -> float:
        if not self._count:
            return 0.0
        return float(np.sum(self._state(t)[0]))
