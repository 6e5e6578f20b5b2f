# -*- coding: utf-8 -*-
"""Exception hierarchy; `exit_code` is what the CLI returns for each."""


class MemheatException(Exception):
    exit_code = 1


class InvalidParameter(MemheatException, ValueError):
    exit_code = 2


class ConfigInvalid(InvalidParameter):
    exit_code = 2


class NotApplicable(InvalidParameter):
    exit_code = 2


class HypothesisViolated(MemheatException):
    """A kernel hypothesis or the coercivity condition on A fails."""

    exit_code = 3
    hypothesis = ""

    def __init__(self, message, hypothesis=None):
        super().__init__(message)
        if hypothesis is not None:
            self.hypothesis = hypothesis


class G1Violated(HypothesisViolated):
    hypothesis = "G1"


class DivergentMass(G1Violated):
    pass


class G2Violated(HypothesisViolated):
    hypothesis = "G2"


class NumericalFailure(MemheatException, ArithmeticError):
    exit_code = 4


class StepFailed(NumericalFailure):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class CompressionFailed(NumericalFailure):
    def __init__(self, message, error=None):
        super().__init__(message)
        self.error = error


class Indeterminate(NumericalFailure):
    pass


class NonMonotoneTime(InvalidParameter):
    pass


class TheoremCheckFailed(MemheatException):
    exit_code = 5

    def __init__(self, message, margin=None):
        super().__init__(message)
        self.margin = margin
