# -*- coding: utf-8 -*-
"""Relaxation kernels g and their mass.

Every kernel evaluates g, g', the running integral int_0^t g and the tail
int_T^inf g, vectorised over numpy arrays. Scalars in give floats out.
Kernels are frozen after construction and can be shared between runs.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import ClassVar, Optional, Tuple

import numpy as np
from scipy import integrate, interpolate, special

from memheat.exceptions import DivergentMass, G1Violated, InvalidParameter
from memheat.utils.enums import CustomEnum

logger = logging.getLogger(__name__)

_ERR_PFX = "Kernel: "

# g(T_cut) < _CUTOFF_RATIO * g(0) ends the numerical mass integral
_CUTOFF_RATIO = 1e-14
_CUTOFF_CAP = 1e12


class KernelFamily(Enum, metaclass=CustomEnum):
    POWER_LAW = "power_law"
    STRETCHED_EXP = "stretched_exp"
    PURE_EXP = "pure_exp"
    TABULATED = "tabulated"
    MEMORYLESS = "memoryless"


class KernelError:
    """Message Literals used for Errors in the kernel module."""

    NOT_POSITIVE = _ERR_PFX + "`{0}` must be positive. Got {1}."
    DIVERGENT = (
        _ERR_PFX + "power law with nu={0} has infinite mass; nu > 1 "
        "is required."
    )
    MISSING_PARAM = _ERR_PFX + "family `{0}` requires parameter `{1}`."
    UNKNOWN_PARAM = _ERR_PFX + "family `{0}` takes no parameter(s) {1}."
    SAMPLES_SHAPE = (
        _ERR_PFX + "tabulated kernel needs at least 2 samples with "
        "matching t and g. Got {0} and {1}."
    )
    SAMPLES_START = _ERR_PFX + "tabulated samples must start at t=0."
    SAMPLES_ORDER = _ERR_PFX + "tabulated t samples must increase strictly."
    SAMPLES_MONOTONE = (
        _ERR_PFX + "tabulated g samples must be positive and "
        "nonincreasing."
    )
    FLAT_TAIL = (
        _ERR_PFX + "tabulated kernel does not decay over its last two "
        "samples; its mass is infinite."
    )
    G1_MASS = (
        _ERR_PFX + "(G1) violated: int g = {0:.10g} >= 1 for {1}, so "
        "the mass deficit l = {2:.3g} is not positive."
    )


def _evaluate(t, fn):
    arr = np.asarray(t, dtype=float)
    out = fn(arr)
    return out if arr.ndim else float(out)


@dataclass(frozen=True)
class RelaxationKernel:
    family: ClassVar[KernelFamily]

    def value(self, t):
        return _evaluate(t, self._value)

    def derivative(self, t):
        return _evaluate(t, self._derivative)

    def integral(self, t):
        """int_0^t g(s) ds"""
        return _evaluate(t, self._integral)

    def tail_mass(self, t):
        """int_t^inf g(s) ds"""
        return _evaluate(t, self._tail)

    def __call__(self, t):
        return self.value(t)

    @property
    def mass(self) -> Optional[float]:
        """int_0^inf g in closed form (exact integral of the interpolant
        for tabulated kernels)."""
        return float(self._tail(np.asarray(0.0)))

    @property
    def g0(self) -> float:
        return self.value(0.0)

    @property
    def params(self) -> dict:
        return {}

    def describe(self) -> str:
        args = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.family.value}({args})"

    def _value(self, t):
        raise NotImplementedError

    def _derivative(self, t):
        raise NotImplementedError

    def _integral(self, t):
        return self._tail(np.zeros_like(t)) - self._tail(t)

    def _tail(self, t):
        raise NotImplementedError


@dataclass(frozen=True)
class PowerLaw(RelaxationKernel):
    """g(t) = a (1+t)^-nu"""

    family: ClassVar[KernelFamily] = KernelFamily.POWER_LAW
    a: float
    nu: float

    @property
    def params(self):
        return {"a": self.a, "nu": self.nu}

    def _value(self, t):
        return self.a * (1.0 + t) ** -self.nu

    def _derivative(self, t):
        return -self.a * self.nu * (1.0 + t) ** (-self.nu - 1.0)

    def _integral(self, t):
        # -expm1 keeps small t accurate
        scale = self.a / (self.nu - 1.0)
        return -scale * np.expm1((1.0 - self.nu) * np.log1p(t))

    def _tail(self, t):
        return self.a / (self.nu - 1.0) * (1.0 + t) ** (1.0 - self.nu)


@dataclass(frozen=True)
class StretchedExp(RelaxationKernel):
    """g(t) = a exp(-b (1+t)^alpha)"""

    family: ClassVar[KernelFamily] = KernelFamily.STRETCHED_EXP
    a: float
    b: float
    alpha: float

    @property
    def params(self):
        return {"a": self.a, "b": self.b, "alpha": self.alpha}

    def _value(self, t):
        return self.a * np.exp(-self.b * (1.0 + t) ** self.alpha)

    def _derivative(self, t):
        return (
            -self.b
            * self.alpha
            * (1.0 + t) ** (self.alpha - 1.0)
            * self._value(t)
        )

    def _tail(self, t):
        # substitute x = b (1+s)^alpha: upper incomplete gamma of 1/alpha
        shape = 1.0 / self.alpha
        scale = self.a / (self.alpha * self.b**shape) * special.gamma(shape)
        x = self.b * (1.0 + t) ** self.alpha
        return scale * special.gammaincc(shape, x)


@dataclass(frozen=True)
class PureExp(RelaxationKernel):
    """g(t) = a exp(-b t)"""

    family: ClassVar[KernelFamily] = KernelFamily.PURE_EXP
    a: float
    b: float

    @property
    def params(self):
        return {"a": self.a, "b": self.b}

    def _value(self, t):
        return self.a * np.exp(-self.b * t)

    def _derivative(self, t):
        return -self.b * self._value(t)

    def _integral(self, t):
        return -self.a / self.b * np.expm1(-self.b * t)

    def _tail(self, t):
        return self.a / self.b * np.exp(-self.b * t)


@dataclass(frozen=True)
class Tabulated(RelaxationKernel):
    """Sampled kernel: monotone cubic (PCHIP) between the samples and the
    exponential through the last two samples beyond them."""

    family: ClassVar[KernelFamily] = KernelFamily.TABULATED
    t_samples: Tuple[float, ...]
    g_samples: Tuple[float, ...]
    _pchip: object = field(init=False, repr=False, compare=False)
    _antider: object = field(init=False, repr=False, compare=False)
    _slopes: np.ndarray = field(init=False, repr=False, compare=False)
    _decay: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        t = np.asarray(self.t_samples, dtype=float)
        g = np.asarray(self.g_samples, dtype=float)
        pchip = interpolate.PchipInterpolator(t, g, extrapolate=False)
        edge_order = 2 if t.size > 2 else 1
        object.__setattr__(self, "_pchip", pchip)
        object.__setattr__(self, "_antider", pchip.antiderivative())
        object.__setattr__(
            self, "_slopes", np.gradient(g, t, edge_order=edge_order)
        )
        object.__setattr__(
            self, "_decay", math.log(g[-2] / g[-1]) / (t[-1] - t[-2])
        )

    @property
    def params(self):
        return {"samples": len(self.t_samples)}

    def describe(self):
        return f"{self.family.value}({len(self.t_samples)} samples)"

    @property
    def _t_last(self):
        return self.t_samples[-1]

    @property
    def _g_last(self):
        return self.g_samples[-1]

    def _tail_curve(self, t):
        return self._g_last * np.exp(-self._decay * (t - self._t_last))

    def _value(self, t):
        inside = t <= self._t_last
        return np.where(
            inside,
            self._pchip(np.minimum(t, self._t_last)),
            self._tail_curve(np.maximum(t, self._t_last)),
        )

    def _derivative(self, t):
        inside = t <= self._t_last
        sampled = np.interp(t, self.t_samples, self._slopes)
        return np.where(
            inside,
            sampled,
            -self._decay * self._tail_curve(np.maximum(t, self._t_last)),
        )

    def _integral(self, t):
        head = self._antider(np.minimum(t, self._t_last))
        beyond = np.maximum(t - self._t_last, 0.0)
        return head + self._g_last / self._decay * -np.expm1(
            -self._decay * beyond
        )

    def _tail(self, t):
        total = self._antider(self._t_last) + self._g_last / self._decay
        return total - self._integral(t)


@dataclass(frozen=True)
class Memoryless(RelaxationKernel):
    """g = 0: the plain quasilinear heat equation."""

    family: ClassVar[KernelFamily] = KernelFamily.MEMORYLESS

    def describe(self):
        return self.family.value

    def _value(self, t):
        return np.zeros_like(t)

    _derivative = _value
    _integral = _value
    _tail = _value


_FAMILY_PARAMS = {
    KernelFamily.POWER_LAW: (PowerLaw, ("a", "nu"), {}),
    KernelFamily.STRETCHED_EXP: (StretchedExp, ("a", "alpha"), {"b": 1.0}),
    KernelFamily.PURE_EXP: (PureExp, ("a", "b"), {}),
    KernelFamily.TABULATED: (Tabulated, ("samples",), {}),
    KernelFamily.MEMORYLESS: (Memoryless, (), {}),
}


def make_kernel(family, params: dict = None) -> RelaxationKernel:
    """Build and validate a kernel.

    `family` is a `KernelFamily` or its config spelling. For
    `stretched_exp` the rate `b` defaults to 1. `tabulated` takes
    `samples=(t, g)`.
    """
    family = KernelFamily.parse(family)
    klass, required, defaults = _FAMILY_PARAMS[family]
    params = {k: v for k, v in (params or {}).items() if v is not None}
    allowed = set(required) | set(defaults)
    if unknown := sorted(set(params).difference(allowed)):
        raise InvalidParameter(
            KernelError.UNKNOWN_PARAM.format(family.value, unknown)
        )
    for name in required:
        if name not in params:
            raise InvalidParameter(
                KernelError.MISSING_PARAM.format(family.value, name)
            )
    values = {**defaults, **params}

    if family is KernelFamily.TABULATED:
        return _make_tabulated(*values["samples"])

    for name, value in values.items():
        if not value > 0:
            raise InvalidParameter(
                KernelError.NOT_POSITIVE.format(name, value)
            )
    if family is KernelFamily.POWER_LAW and values["nu"] <= 1:
        raise DivergentMass(KernelError.DIVERGENT.format(values["nu"]))
    kernel = klass(**{k: float(v) for k, v in values.items()})
    logger.debug("built kernel %s", kernel.describe())
    return kernel


def _make_tabulated(t_samples, g_samples) -> Tabulated:
    t = np.asarray(t_samples, dtype=float)
    g = np.asarray(g_samples, dtype=float)
    if t.ndim != 1 or t.size < 2 or t.shape != g.shape:
        raise InvalidParameter(
            KernelError.SAMPLES_SHAPE.format(t.shape, g.shape)
        )
    if t[0] != 0.0:
        raise InvalidParameter(KernelError.SAMPLES_START)
    if np.any(np.diff(t) <= 0):
        raise InvalidParameter(KernelError.SAMPLES_ORDER)
    if np.any(g <= 0) or np.any(np.diff(g) > 0):
        raise InvalidParameter(KernelError.SAMPLES_MONOTONE)
    if g[-1] >= g[-2]:
        raise DivergentMass(KernelError.FLAT_TAIL)
    return Tabulated(tuple(t.tolist()), tuple(g.tolist()))


def kernel_from_config(section) -> RelaxationKernel:
    """Kernel for the `kernel` section of a `RunConfig`."""
    params = dict(section.params)
    if section.samples is not None:
        params["samples"] = section.samples
    return make_kernel(section.family, params)


@dataclass(frozen=True)
class MassDeficit:
    """l = 1 - int_0^inf g with the error of the mass used."""

    l: float
    mass: float
    error: float
    method: str

    def __float__(self):
        return self.l


def numerical_mass(kernel: RelaxationKernel) -> Tuple[float, float]:
    """int_0^inf g by adaptive quadrature on dyadic panels up to T_cut,
    plus the analytic tail beyond it. Returns (mass, error estimate)."""
    g0 = kernel.g0
    if g0 == 0.0:
        return 0.0, 0.0
    t_cut = 1.0
    while kernel.value(t_cut) >= _CUTOFF_RATIO * g0 and t_cut < _CUTOFF_CAP:
        t_cut *= 2.0

    total, error = 0.0, 0.0
    lower, upper = 0.0, min(1.0, t_cut)
    while lower < t_cut:
        value, err = integrate.quad(
            kernel.value,
            lower,
            upper,
            epsabs=1e-16 * g0,
            epsrel=1e-12,
            limit=200,
        )
        total += value
        error += err
        lower, upper = upper, min(2.0 * upper, t_cut)
    tail = kernel.tail_mass(t_cut)
    logger.debug(
        "numerical mass of %s: %.15g (+ tail %.3g beyond %g, err %.3g)",
        kernel.describe(),
        total,
        tail,
        t_cut,
        error,
    )
    return total + tail, error


def kernel_mass_deficit(kernel: RelaxationKernel) -> MassDeficit:
    """Mass deficit l = 1 - int g, checked against (G1).

    The closed-form mass is used when the family has one; the quadrature
    value is computed alongside and its distance to it is the reported
    error.
    """
    quad_mass, quad_err = numerical_mass(kernel)
    closed = kernel.mass
    if closed is not None:
        mass, error, method = closed, abs(closed - quad_mass), "closed_form"
    else:
        mass, error, method = quad_mass, quad_err, "quadrature"
    deficit = 1.0 - mass
    if deficit <= 0.0:
        raise G1Violated(
            KernelError.G1_MASS.format(mass, kernel.describe(), deficit)
        )
    return MassDeficit(l=deficit, mass=mass, error=error, method=method)
