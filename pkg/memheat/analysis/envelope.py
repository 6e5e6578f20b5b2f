# -*- coding: utf-8 -*-
"""Decay envelopes and the integrability condition that selects them.

With Xi_q(t) = int_0^t xi^q the envelope is lambda0 S(t) with

    Exponential        (p = 1):  S = exp(-lambda1 Xi_1)
    GeneralPolynomial  (p > 1):  S = (1 + lambda1 Xi_{2p-1})^(-1/(2p-2))
    OptimalPolynomial  (p > 1):  S = (1 + lambda1 Xi_p)^(-1/(p-1))

the last one only when int_0^inf (1 + Xi_{2p-1})^(-1/(2p-2)) dt < inf.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from scipy import integrate, optimize

from memheat.analysis.trace import EnergyTrace
from memheat.exceptions import (
    Indeterminate,
    InvalidParameter,
    NotApplicable,
    TheoremCheckFailed,
)
from memheat.kernel.certificate import RateForm, RateFunction
from memheat.utils.enums import CustomEnum

logger = logging.getLogger(__name__)

_ERR_PFX = "Envelope: "

PARTIAL_HORIZONS = (10.0, 100.0, 1e3, 1e4)
PARTIAL_GRID = 4000
# numerical tail slopes within this band of -1 are not classified
SLOPE_BAND = 0.05
LAMBDA1_BOUNDS = (1e-8, 1e4)


class EnvelopeKind(Enum, metaclass=CustomEnum):
    EXPONENTIAL = "Exponential"
    GENERAL_POLYNOMIAL = "GeneralPolynomial"
    OPTIMAL_POLYNOMIAL = "OptimalPolynomial"


class EnvelopeError:
    """Message Literals used for Errors in decay envelopes."""

    NOT_APPLICABLE = (
        _ERR_PFX + "the integrability condition needs p > 1. Got p={0}."
    )
    BORDERLINE = (
        _ERR_PFX + "tail slope {0:.4f} of the integrand is too close to -1 "
        "to classify the integral."
    )
    NONPOSITIVE = (
        _ERR_PFX + "E must be positive on the window to fit lambda1; "
        "E({0:g}) = {1:.6g}."
    )
    ZERO_TRACE = _ERR_PFX + "E vanishes on every stamp; nothing to bound."
    BAD_CONSTANT = _ERR_PFX + "{0} must be positive. Got {1}."
    KIND_FOR_P = _ERR_PFX + "kind {0} does not apply to p={1}."
    NOT_INTEGRABLE = (
        _ERR_PFX + "kind OptimalPolynomial needs the integrability "
        "condition, which fails for xi={0}, p={1}."
    )
    VIOLATED = (
        _ERR_PFX + "E exceeds the {0} envelope on the window {1}: margin "
        "{2:.6g} < 0 (lambda0={3:.6g}, lambda1={4:.6g})."
    )


@dataclass(frozen=True)
class IntegrabilityResult:
    finite: bool
    # t^s behaviour of the integrand at infinity
    tail_exponent: float
    method: str
    # int_0^T of the integrand for T in PARTIAL_HORIZONS
    partials: Tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "finite": self.finite,
            "tail_exponent": self.tail_exponent,
            "method": self.method,
            "partials": list(self.partials),
        }


def _powers(kind: EnvelopeKind, p: float) -> Tuple[float, float]:
    """(q, gamma) of S = (1 + lambda1 Xi_q)^(-gamma)."""
    if kind is EnvelopeKind.OPTIMAL_POLYNOMIAL:
        return p, 1.0 / (p - 1.0)
    return 2.0 * p - 1.0, 1.0 / (2.0 * p - 2.0)


def _integrand(xi: RateFunction, q, gamma, t):
    return (1.0 + xi.integral_pow(t, q)) ** -gamma


def _partials(xi, q, gamma):
    grid = np.concatenate(
        [[0.0], np.geomspace(1e-3, PARTIAL_HORIZONS[-1], PARTIAL_GRID)]
    )
    running = integrate.cumulative_trapezoid(
        _integrand(xi, q, gamma, grid), grid, initial=0.0
    )
    return tuple(float(np.interp(h, grid, running)) for h in PARTIAL_HORIZONS)


def _closed_form_tail(xi, q, gamma):
    if xi.form is RateForm.ZERO:
        return 0.0
    growth = 1.0 if xi.form is RateForm.CONSTANT else q * xi.beta + 1.0
    # growth <= 0: Xi_q stays bounded or grows like log t
    return -gamma * growth if growth > 0.0 else 0.0


def _numerical_tail(xi, q, gamma):
    t = np.geomspace(PARTIAL_HORIZONS[-2], PARTIAL_HORIZONS[-1], 41)
    values = _integrand(xi, q, gamma, t)
    design = np.column_stack([np.log(t), np.ones_like(t)])
    (slope, _), *_ = np.linalg.lstsq(design, np.log(values), rcond=None)
    if abs(slope + 1.0) <= SLOPE_BAND:
        raise Indeterminate(EnvelopeError.BORDERLINE.format(slope))
    return float(slope)


def check_integrability(certificate) -> IntegrabilityResult:
    """Is int_0^inf (1 + int_0^t xi^(2p-1))^(-1/(2p-2)) dt finite?

    Closed-form xi are classified by the tail exponent of the integrand;
    callables by its fitted log-log slope over [1e3, 1e4]. Partial
    integrals up to 1e4 are reported either way.
    """
    p = certificate.p
    if not p > 1.0:
        raise NotApplicable(EnvelopeError.NOT_APPLICABLE.format(p))
    xi = certificate.xi
    q, gamma = 2.0 * p - 1.0, 1.0 / (2.0 * p - 2.0)
    if xi.closed_form:
        exponent, method = _closed_form_tail(xi, q, gamma), "closed_form"
    else:
        exponent, method = _numerical_tail(xi, q, gamma), "numerical"
    result = IntegrabilityResult(
        finite=exponent < -1.0,
        tail_exponent=exponent,
        method=method,
        partials=_partials(xi, q, gamma),
    )
    logger.debug(
        "integrability for xi=%s, p=%g: %s (tail t^%.4g, %s)",
        xi.describe(),
        p,
        "finite" if result.finite else "infinite",
        exponent,
        method,
    )
    return result


def select_kind(certificate) -> Tuple[EnvelopeKind, Optional[str]]:
    """Envelope kind for a certificate and a note on why."""
    if not certificate.p > 1.0:
        return EnvelopeKind.EXPONENTIAL, "p = 1"
    try:
        result = check_integrability(certificate)
    except Indeterminate as exc:
        return EnvelopeKind.GENERAL_POLYNOMIAL, str(exc)
    note = (
        f"integrability {'holds' if result.finite else 'fails'}: "
        f"integrand ~ t^{result.tail_exponent:.6g}"
    )
    if result.finite:
        return EnvelopeKind.OPTIMAL_POLYNOMIAL, note
    return EnvelopeKind.GENERAL_POLYNOMIAL, note


@dataclass(frozen=True, eq=False)
class DecayEnvelope:
    kind: EnvelopeKind
    lambda0: float
    lambda1: float
    # min over the window of 1 - E / (lambda0 S)
    margin: float
    p: float
    xi: RateFunction
    window: Tuple[float, float]
    note: Optional[str] = None

    @property
    def exponent(self) -> Optional[float]:
        """Power of (1 + lambda1 Xi_q) for the polynomial kinds."""
        if self.kind is EnvelopeKind.EXPONENTIAL:
            return None
        return -_powers(self.kind, self.p)[1]

    def shape(self, t):
        return envelope_shape(self.kind, self.xi, self.p, self.lambda1, t)

    def __call__(self, t):
        return self.lambda0 * self.shape(t)

    @property
    def holds(self) -> bool:
        return self.margin >= 0.0

    def assert_holds(self):
        if not self.holds:
            raise TheoremCheckFailed(
                EnvelopeError.VIOLATED.format(
                    self.kind.value,
                    list(self.window),
                    self.margin,
                    self.lambda0,
                    self.lambda1,
                ),
                margin=self.margin,
            )
        return self

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "lambda0": self.lambda0,
            "lambda1": self.lambda1,
            "margin": self.margin,
            "exponent": self.exponent,
            "note": self.note,
        }


def envelope_shape(kind, xi, p, lambda1, t):
    """S(t) of the given kind."""
    kind = EnvelopeKind.parse(kind)
    if kind is EnvelopeKind.EXPONENTIAL:
        return np.exp(-lambda1 * xi.integral_pow(t, 1.0))
    q, gamma = _powers(kind, p)
    return (1.0 + lambda1 * xi.integral_pow(t, q)) ** -gamma


def _fit_lambda1(kind, xi, p, t, e):
    """lambda1 minimising the spread of log E - log S on the window."""
    log_e = np.log(e)

    def spread(log_lambda):
        shape = envelope_shape(kind, xi, p, np.exp(log_lambda), t)
        gap = log_e - np.log(shape)
        gap = gap - gap.mean()
        return float(gap @ gap)

    found = optimize.minimize_scalar(
        spread,
        bounds=np.log(LAMBDA1_BOUNDS),
        method="bounded",
        options={"xatol": 1e-10},
    )
    return float(np.exp(found.x))


def envelope(
    certificate,
    trace: EnergyTrace,
    window=None,
    lambda0: float = None,
    lambda1: float = None,
    kind=None,
) -> DecayEnvelope:
    """Fit the envelope the certificate predicts to a trace.

    lambda1 comes from a tail regression of log E against log S on
    `window` (default [T/2, T]); lambda0 is then the smallest constant
    with E <= lambda0 S on the window stamps. Either may be given instead.
    When xi vanishes S does not depend on lambda1, which is then 1. The
    margin is measured on the window; a negative margin is reported, and
    `assert_holds` turns it into TheoremCheckFailed.
    """
    p, xi = certificate.p, certificate.xi
    if kind is None:
        kind, note = select_kind(certificate)
    else:
        kind, note = EnvelopeKind.parse(kind), None
        if (kind is EnvelopeKind.EXPONENTIAL) == (p > 1.0):
            raise InvalidParameter(
                EnvelopeError.KIND_FOR_P.format(kind.value, p)
            )
        if kind is EnvelopeKind.OPTIMAL_POLYNOMIAL:
            if not check_integrability(certificate).finite:
                raise InvalidParameter(
                    EnvelopeError.NOT_INTEGRABLE.format(xi.describe(), p)
                )
    for name, value in (("lambda0", lambda0), ("lambda1", lambda1)):
        if value is not None and not value > 0.0:
            raise InvalidParameter(
                EnvelopeError.BAD_CONSTANT.format(name, value)
            )

    window = tuple(window) if window is not None else trace.default_window()
    mask = trace.window_mask(window)
    t, e = trace.t, trace.energy
    if not np.any(e > 0.0):
        raise InvalidParameter(EnvelopeError.ZERO_TRACE)
    if lambda1 is None:
        q = 1.0 if kind is EnvelopeKind.EXPONENTIAL else _powers(kind, p)[0]
        if not np.any(xi.integral_pow(t[mask], q) > 0.0):
            # S does not depend on lambda1
            lambda1 = 1.0
        elif np.any(bad := e[mask] <= 0.0):
            i = int(np.argmax(bad))
            raise InvalidParameter(
                EnvelopeError.NONPOSITIVE.format(t[mask][i], e[mask][i])
            )
        else:
            lambda1 = _fit_lambda1(kind, xi, p, t[mask], e[mask])

    ratio = e / envelope_shape(kind, xi, p, lambda1, t)
    if lambda0 is None:
        lambda0 = float(np.max(ratio[mask], initial=0.0))
        if lambda0 == 0.0:
            # E vanishes on the window; any constant bounds it there
            lambda0 = float(np.max(ratio))
    margin = float(np.min(1.0 - ratio[mask] / lambda0, initial=1.0))
    result = DecayEnvelope(
        kind=kind,
        lambda0=float(lambda0),
        lambda1=float(lambda1),
        margin=margin,
        p=p,
        xi=xi,
        window=(float(window[0]), float(window[1])),
        note=note,
    )
    logger.info(
        "%s envelope: lambda0=%.6g lambda1=%.6g margin=%.3g",
        kind.value,
        result.lambda0,
        result.lambda1,
        margin,
    )
    return result
