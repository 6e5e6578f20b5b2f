# -*- coding: utf-8 -*-
from memheat.analysis.energy import (
    DissipationResidual,
    EnergyIntegral,
    K0Ratio,
    dissipation_residual,
    energy,
    energy_derivative,
    energy_integral,
    is_monotone,
    k0_ratio,
)
from memheat.analysis.envelope import (
    DecayEnvelope,
    EnvelopeKind,
    IntegrabilityResult,
    check_integrability,
    envelope,
)
from memheat.analysis.fitting import (
    FitModel,
    FitResult,
    fit_decay,
    fit_model_for,
)
from memheat.analysis.jensen import jensen_check, jensen_sides
from memheat.analysis.summary import (
    SUMMARY_SCHEMA,
    summarize,
    validate_summary,
)
from memheat.analysis.trace import EnergyTrace, TracePoint

__all__ = [
    "DecayEnvelope",
    "DissipationResidual",
    "EnergyIntegral",
    "EnergyTrace",
    "EnvelopeKind",
    "FitModel",
    "FitResult",
    "IntegrabilityResult",
    "K0Ratio",
    "SUMMARY_SCHEMA",
    "TracePoint",
    "check_integrability",
    "dissipation_residual",
    "energy",
    "energy_derivative",
    "energy_integral",
    "fit_decay",
    "fit_model_for",
    "is_monotone",
    "jensen_check",
    "jensen_sides",
    "k0_ratio",
    "summarize",
    "validate_summary",
]
