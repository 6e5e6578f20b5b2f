# -*- coding: utf-8 -*-
"""(G2) certificates: an admissible pair (xi, p) with g' <= -xi g^p."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from memheat.config import Settings
from memheat.exceptions import G2Violated, InvalidParameter
from memheat.kernel.relaxation import (
    KernelFamily,
    RelaxationKernel,
    kernel_mass_deficit,
)
from memheat.utils.enums import CustomEnum

logger = logging.getLogger(__name__)

_ERR_PFX = "Certificate: "

P_MAX = 1.5
# relative to g(0) for closed-form kernels, absolute for tabulated ones
SLACK_TOL = 1e-12
TABULATED_TOL = 1e-10


class RateForm(Enum, metaclass=CustomEnum):
    CONSTANT = "constant"
    POWER = "power"
    ZERO = "zero"
    CALLABLE = "callable"


class CertificateError:
    """Message Literals used for Errors in certification."""

    P_RANGE = _ERR_PFX + "(G2) needs p in [1, 3/2). Got p={0}."
    XI_NEGATIVE = _ERR_PFX + "(G2) needs xi >= 0; xi({0:g}) = {1:.6g}."
    XI_INCREASING = (
        _ERR_PFX + "(G2) needs xi nonincreasing; it increases near "
        "t={0:g}."
    )
    INEQUALITY = (
        _ERR_PFX + "(G2) violated for {0}: g' + xi g^p = {1:.3g} > {2:.3g} "
        "at t={3:g}."
    )
    NO_RATE = (
        _ERR_PFX + "no positive constant xi satisfies (G2) for {0} with "
        "p={1}."
    )
    NOT_INCREASING = _ERR_PFX + "g is not nonincreasing near t={0:g}."
    NOT_POSITIVE = _ERR_PFX + "g(0) must be positive. Got {0}."
    BAD_RATE = _ERR_PFX + "cannot build a rate function from {0!r}."
    BAD_POWER = _ERR_PFX + "power rate needs c >= 0 and beta <= 0."


@dataclass(frozen=True)
class RateFunction:
    """The rate xi(t) of (G2).

    `constant`: c, `power`: c (1+t)^beta, `zero`: 0, `callable`: any
    vectorised function. The closed forms let `integral_pow` and the
    integrability classifier work without quadrature.
    """

    form: RateForm
    c: float = 0.0
    beta: float = 0.0
    func: Optional[Callable] = None

    @classmethod
    def constant(cls, c):
        if c == 0:
            return cls.zero()
        return cls(RateForm.CONSTANT, c=float(c))

    @classmethod
    def power(cls, c, beta):
        if c < 0 or beta > 0:
            raise InvalidParameter(CertificateError.BAD_POWER)
        if beta == 0:
            return cls.constant(c)
        return cls(RateForm.POWER, c=float(c), beta=float(beta))

    @classmethod
    def zero(cls):
        return cls(RateForm.ZERO)

    @classmethod
    def from_callable(cls, func):
        return cls(RateForm.CALLABLE, func=func)

    @classmethod
    def coerce(cls, value):
        """Accept a RateFunction, a number (constant) or a callable."""
        if isinstance(value, RateFunction):
            return value
        if isinstance(value, (int, float, np.floating)):
            return cls.constant(float(value))
        if callable(value):
            return cls.from_callable(value)
        raise InvalidParameter(CertificateError.BAD_RATE.format(value))

    @property
    def closed_form(self) -> bool:
        return self.form is not RateForm.CALLABLE

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        if self.form is RateForm.CONSTANT:
            out = np.full_like(arr, self.c)
        elif self.form is RateForm.POWER:
            out = self.c * (1.0 + arr) ** self.beta
        elif self.form is RateForm.ZERO:
            out = np.zeros_like(arr)
        else:
            out = np.asarray(self.func(arr), dtype=float)
        return out if arr.ndim else float(out)

    def integral_pow(self, t, q=1.0):
        """int_0^t xi(s)^q ds, vectorised over t."""
        arr = np.asarray(t, dtype=float)
        if self.form is RateForm.CONSTANT:
            out = self.c**q * arr
        elif self.form is RateForm.POWER:
            exponent = self.beta * q + 1.0
            if abs(exponent) < 1e-14:
                out = self.c**q * np.log1p(arr)
            else:
                out = (
                    self.c**q
                    * np.expm1(exponent * np.log1p(arr))
                    / exponent
                )
        elif self.form is RateForm.ZERO:
            out = np.zeros_like(arr)
        else:
            out = self._quad_pow(arr, q)
        return out if arr.ndim else float(out)

    def _quad_pow(self, arr, q):
        flat = arr.ravel()
        order = np.argsort(flat)
        knots = np.concatenate([[0.0], flat[order]])
        pieces = [
            integrate.quad(lambda s: self(s) ** q, lo, hi, limit=200)[0]
            for lo, hi in zip(knots[:-1], knots[1:])
        ]
        out = np.empty_like(flat)
        out[order] = np.cumsum(pieces)
        return out.reshape(arr.shape)

    def is_nonincreasing(self, grid) -> bool:
        values = self(np.asarray(grid, dtype=float))
        return bool(np.all(np.diff(values) <= 1e-14 * max(values[0], 1.0)))

    def describe(self) -> str:
        if self.form is RateForm.CONSTANT:
            return f"{self.c:g}"
        if self.form is RateForm.POWER:
            return f"{self.c:g}*(1+t)^{self.beta:g}"
        if self.form is RateForm.ZERO:
            return "0"
        return getattr(self.func, "__name__", "callable")


@dataclass(frozen=True)
class KernelCertificate:
    kernel: RelaxationKernel
    l: float
    p: float
    xi: RateFunction
    # max of g' + xi g^p over the certification grid (<= 0 up to rounding)
    slack: float = 0.0
    canonical: bool = True

    @property
    def xi_closed_form(self) -> Optional[str]:
        return self.xi.form.value if self.xi.closed_form else None

    @property
    def memoryless(self) -> bool:
        return self.kernel.family is KernelFamily.MEMORYLESS

    def to_dict(self) -> dict:
        return {
            "family": self.kernel.family.value,
            "params": self.kernel.params,
            "l": self.l,
            "p": self.p,
            "xi": self.xi.describe(),
            "slack": self.slack,
            "canonical": self.canonical,
        }


def certification_grid(points: int = None) -> np.ndarray:
    """[0] plus log-spaced points on [1e-6, 1e3]."""
    points = points or Settings().memheat_grid_points
    return np.concatenate([[0.0], np.logspace(-6.0, 3.0, points - 1)])


def canonical_pair(kernel: RelaxationKernel, p: float = None):
    """The family's own (xi, p) pair.

    Power laws with nu > 2 get p = (nu+1)/nu and the constant
    xi = nu a^(-1/nu); for nu <= 2 that p leaves [1, 3/2), so p = 1 with
    xi = nu/(1+t) (g'/g exactly). Stretched exponentials get p = 1 and
    xi = b alpha (1+t)^(alpha-1), held at the constant b alpha when
    alpha > 1. Tabulated kernels take the largest constant xi for the trial
    p (default 1).
    """
    family = kernel.family
    if family is KernelFamily.POWER_LAW:
        a, nu = kernel.a, kernel.nu
        if nu > 2.0:
            rate = RateFunction.constant(nu * a ** (-1.0 / nu))
            return rate, (nu + 1.0) / nu
        return RateFunction.power(nu, -1.0), 1.0
    if family is KernelFamily.STRETCHED_EXP:
        rate = kernel.b * kernel.alpha
        if kernel.alpha <= 1.0:
            return RateFunction.power(rate, kernel.alpha - 1.0), 1.0
        return RateFunction.constant(rate), 1.0
    if family is KernelFamily.PURE_EXP:
        return RateFunction.constant(kernel.b), 1.0
    if family is KernelFamily.TABULATED:
        p = 1.0 if p is None else p
        return _largest_constant_rate(kernel, p), p
    return RateFunction.zero(), 1.0


def _largest_constant_rate(kernel, p, grid=None):
    grid = certification_grid() if grid is None else grid
    g = kernel.value(grid)
    dg = kernel.derivative(grid)
    usable = g > np.finfo(float).tiny
    ratio = -dg[usable] / g[usable] ** p
    xi = float(np.min(ratio))
    if not xi > 0.0:
        raise G2Violated(
            CertificateError.NO_RATE.format(kernel.describe(), p)
        )
    return RateFunction.constant(xi)


def _check_kernel_shape(kernel, grid):
    g = kernel.value(grid)
    if not g[0] > 0.0:
        raise InvalidParameter(CertificateError.NOT_POSITIVE.format(g[0]))
    rises = np.nonzero(np.diff(g) > 1e-14 * g[0])[0]
    if rises.size:
        raise G2Violated(
            CertificateError.NOT_INCREASING.format(grid[rises[0]])
        )


def certify_g2(
    kernel: RelaxationKernel, p: float = None, xi=None, grid_points=None
) -> KernelCertificate:
    """Certify (G1) and (G2) for `kernel`.

    Without overrides the family's canonical pair is used. A user pair
    (`p` and/or `xi`, a RateFunction, number or callable) is validated the
    same way: p in [1, 3/2), xi >= 0 and nonincreasing, and
    g'(t) + xi(t) g(t)^p <= 1e-12 g(0) on every grid point.
    """
    deficit = kernel_mass_deficit(kernel)
    if kernel.family is KernelFamily.MEMORYLESS:
        return KernelCertificate(
            kernel=kernel, l=deficit.l, p=1.0, xi=RateFunction.zero()
        )

    grid = certification_grid(grid_points)
    _check_kernel_shape(kernel, grid)

    canonical = xi is None and p is None
    if xi is None:
        if p is not None and kernel.family is not KernelFamily.TABULATED:
            rate, canonical_p = canonical_pair(kernel)
            if p != canonical_p:
                # a different p needs its own constant rate
                rate = _largest_constant_rate(kernel, p, grid)
        else:
            rate, p = canonical_pair(kernel, p)
    else:
        rate = RateFunction.coerce(xi)
        if p is None:
            p = canonical_pair(kernel)[1]
    p = float(p)

    if not 1.0 <= p < P_MAX:
        raise G2Violated(CertificateError.P_RANGE.format(p))

    values = rate(grid)
    if (negative := np.nonzero(values < 0.0)[0]).size:
        i = negative[0]
        raise G2Violated(
            CertificateError.XI_NEGATIVE.format(grid[i], values[i])
        )
    if not rate.is_nonincreasing(grid):
        rises = np.nonzero(np.diff(values) > 1e-14 * max(values[0], 1.0))[0]
        raise G2Violated(
            CertificateError.XI_INCREASING.format(grid[rises[0]])
        )

    g = kernel.value(grid)
    excess = kernel.derivative(grid) + values * g**p
    if kernel.family is KernelFamily.TABULATED:
        tol = TABULATED_TOL
    else:
        tol = SLACK_TOL * g[0]
    worst = int(np.argmax(excess))
    if excess[worst] > tol:
        raise G2Violated(
            CertificateError.INEQUALITY.format(
                kernel.describe(), excess[worst], tol, grid[worst]
            )
        )

    certificate = KernelCertificate(
        kernel=kernel,
        l=deficit.l,
        p=p,
        xi=rate,
        slack=float(excess[worst]),
        canonical=canonical,
    )
    logger.info(
        "certified %s: l=%.10g p=%.10g xi=%s slack=%.3g",
        kernel.describe(),
        certificate.l,
        certificate.p,
        rate.describe(),
        certificate.slack,
    )
    return certificate
