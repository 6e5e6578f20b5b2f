# -*- coding: utf-8 -*-
"""JSON summary of an analysed run."""
import logging

import jsonschema

from memheat.analysis.energy import (
    dissipation_residual,
    energy_integral,
    is_monotone,
    k0_ratio,
)
from memheat.analysis.envelope import check_integrability, envelope
from memheat.analysis.fitting import fit_decay, fit_model_for
from memheat.analysis.trace import EnergyTrace
from memheat.exceptions import ConfigInvalid, Indeterminate, InvalidParameter
from memheat.kernel import certify_g2
from memheat.utils import jsonn

logger = logging.getLogger(__name__)

_ERR_PFX = "Summary: "

_NUMBER = {"type": "number"}
_NULLABLE_NUMBER = {"type": ["number", "null"]}


def _object(properties, required=None):
    return {
        "type": "object",
        "properties": properties,
        "required": list(properties) if required is None else required,
        "additionalProperties": False,
    }


SUMMARY_SCHEMA = _object(
    {
        "preset": {"type": ["string", "null"]},
        "memory_mode": {"type": "string"},
        "window": {
            "type": "array",
            "items": _NUMBER,
            "minItems": 2,
            "maxItems": 2,
        },
        "kernel": _object(
            {
                "family": {"type": "string"},
                "params": {"type": "object"},
                "l": _NUMBER,
                "p": _NUMBER,
                "xi": {"type": "string"},
            }
        ),
        "energy": _object({"E0": _NUMBER, "E_final": _NUMBER}),
        "envelope": {
            "oneOf": [
                {"type": "null"},
                _object(
                    {
                        "kind": {
                            "enum": [
                                "Exponential",
                                "GeneralPolynomial",
                                "OptimalPolynomial",
                            ]
                        },
                        "lambda0": _NUMBER,
                        "lambda1": _NUMBER,
                        "margin": _NUMBER,
                        "exponent": _NULLABLE_NUMBER,
                        "note": {"type": ["string", "null"]},
                    }
                ),
            ]
        },
        "fit": {
            "oneOf": [
                {"type": "null"},
                _object(
                    {
                        "model": {"enum": ["power_law", "stretched_exp"]},
                        "params": {
                            "type": "object",
                            "additionalProperties": _NUMBER,
                        },
                        "window": {"type": "array", "items": _NUMBER},
                        "residual": _NUMBER,
                    }
                ),
            ]
        },
        "checks": _object(
            {
                "monotone": {"type": "boolean"},
                "dissipation_residual": _NULLABLE_NUMBER,
                "dissipation_ratio": _NULLABLE_NUMBER,
                "k0": _NULLABLE_NUMBER,
                "k0_excluded": {"type": ["integer", "null"]},
                "integrable": {"type": ["boolean", "null"]},
                "energy_integral": _NUMBER,
                "energy_integral_tail": _NUMBER,
                "weak_residual": _NULLABLE_NUMBER,
            }
        ),
    }
)


class SummaryError:
    """Message Literals used for Errors in run summaries."""

    INVALID = _ERR_PFX + "summary does not match its schema at {0}: {1}"


def validate_summary(summary: dict) -> dict:
    try:
        jsonn.validate_json(summary, SUMMARY_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = ".".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigInvalid(SummaryError.INVALID.format(path, exc.message))
    return summary


def summarize(
    trace: EnergyTrace,
    preset: str = None,
    window=None,
    refined: EnergyTrace = None,
    weak_residual: float = None,
) -> dict:
    """Every analysis of `trace` in one schema-checked mapping.

    Checks that cannot be evaluated on this trace (too few stamps, an
    all-equilibrium trace, p = 1 for integrability, an energy that
    vanishes where the envelope is fitted) are reported as null.
    """
    certificate = trace.certificate or certify_g2(trace.kernel)
    window = tuple(window) if window is not None else trace.default_window()
    # a window outside the trace is a config error, not a missing check
    trace.window_mask(window)

    try:
        decay = envelope(certificate, trace, window).to_dict()
    except InvalidParameter as exc:
        logger.warning("no decay envelope: %s", exc)
        decay = None
    model, nu = fit_model_for(certificate)
    try:
        fit = fit_decay(trace, model, window, nu).to_dict()
    except InvalidParameter as exc:
        logger.warning("no decay fit: %s", exc)
        fit = None

    residual = ratio = None
    if len(trace) >= 3:
        check = dissipation_residual(trace, refined)
        residual, ratio = check.relative, check.ratio
    try:
        k0 = k0_ratio(trace, certificate)
    except Indeterminate as exc:
        logger.warning("%s", exc)
        k0 = None
    integrable = (
        check_integrability(certificate).finite
        if certificate.p > 1.0
        else None
    )
    integral = energy_integral(trace)

    summary = jsonn.to_jsonable(
        {
            "preset": preset,
            "memory_mode": trace.memory_mode,
            "window": list(window),
            "kernel": {
                "family": certificate.kernel.family.value,
                "params": certificate.kernel.params,
                "l": certificate.l,
                "p": certificate.p,
                "xi": certificate.xi.describe(),
            },
            "energy": {
                "E0": trace.e0,
                "E_final": float(trace.energy[-1]),
            },
            "envelope": decay,
            "fit": fit,
            "checks": {
                "monotone": is_monotone(trace),
                "dissipation_residual": residual,
                "dissipation_ratio": ratio,
                "k0": None if k0 is None else k0.k0,
                "k0_excluded": None if k0 is None else k0.excluded,
                "integrable": integrable,
                "energy_integral": integral.total,
                "energy_integral_tail": integral.tail_increment,
                "weak_residual": weak_residual,
            },
        }
    )
    return validate_summary(summary)
