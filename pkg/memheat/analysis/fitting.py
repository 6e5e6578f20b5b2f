# -*- coding: utf-8 -*-
"""Least-squares decay fits on the tail of a trace.

`power_law`:     log E = log C + s log(1 + t)
`stretched_exp`: log E = log C - rate (1 + t)^nu
"""
import logging
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, Tuple

import numpy as np

from memheat.analysis.trace import EnergyTrace
from memheat.exceptions import InvalidParameter
from memheat.kernel.certificate import RateForm
from memheat.utils.enums import CustomEnum

logger = logging.getLogger(__name__)

_ERR_PFX = "Fit: "


class FitModel(Enum, metaclass=CustomEnum):
    POWER_LAW = "power_law"
    STRETCHED_EXP = "stretched_exp"


class FitError:
    """Message Literals used for Errors in decay fits."""

    NONPOSITIVE = (
        _ERR_PFX + "E must be positive on the window; E({0:g}) = {1:.6g}."
    )
    TOO_FEW = _ERR_PFX + "window [{0:g}, {1:g}] holds {2} stamps; need 2."
    BAD_NU = _ERR_PFX + "nu must be positive. Got {0}."


@dataclass(frozen=True)
class FitResult:
    model: FitModel
    params: Dict[str, float]
    window: Tuple[float, float]
    # max |fit / E - 1| on the window
    residual: float

    def predict(self, t):
        return _predict(self.model, self.params, t)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["model"] = self.model.value
        out["window"] = list(self.window)
        return out


def _predict(model, params, t):
    t = np.asarray(t, dtype=float)
    prefactor = params["prefactor"]
    if model is FitModel.POWER_LAW:
        return prefactor * (1.0 + t) ** params["exponent"]
    return prefactor * np.exp(-params["rate"] * (1.0 + t) ** params["nu"])


def fit_model_for(certificate) -> Tuple[FitModel, float]:
    """The fit matching the envelope a certificate predicts.

    p > 1 gives a power law. p = 1 with xi = c (1+t)^beta gives a
    stretched exponential in (1+t)^(beta+1); any other xi gives nu = 1.
    """
    if certificate.p > 1.0:
        return FitModel.POWER_LAW, 1.0
    xi = certificate.xi
    if xi.form is RateForm.POWER:
        return FitModel.STRETCHED_EXP, xi.beta + 1.0
    return FitModel.STRETCHED_EXP, 1.0


def fit_decay(
    trace: EnergyTrace, model="power_law", window=None, nu: float = 1.0
) -> FitResult:
    """Fit `model` to E on `window` (default [T/2, T])."""
    model = FitModel.parse(model)
    window = tuple(window) if window is not None else trace.default_window()
    mask = trace.window_mask(window)
    t, e = trace.t[mask], trace.energy[mask]
    if t.size < 2:
        raise InvalidParameter(FitError.TOO_FEW.format(*window, t.size))
    if np.any(bad := e <= 0.0):
        i = int(np.argmax(bad))
        raise InvalidParameter(FitError.NONPOSITIVE.format(t[i], e[i]))

    if model is FitModel.POWER_LAW:
        design = np.column_stack([np.log1p(t), np.ones_like(t)])
    else:
        if not nu > 0.0:
            raise InvalidParameter(FitError.BAD_NU.format(nu))
        design = np.column_stack([(1.0 + t) ** nu, np.ones_like(t)])
    (slope, intercept), *_ = np.linalg.lstsq(design, np.log(e), rcond=None)

    if model is FitModel.POWER_LAW:
        params = {"exponent": float(slope)}
    else:
        params = {
            "rate": float(-slope),
            "slope": float(slope),
            "nu": float(nu),
        }
    params["prefactor"] = float(np.exp(intercept))
    residual = float(np.max(np.abs(_predict(model, params, t) / e - 1.0)))
    logger.debug("%s fit %s, residual %.3e", model.value, params, residual)
    window = (float(window[0]), float(window[1]))
    return FitResult(model, params, window, residual)
