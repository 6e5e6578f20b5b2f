# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest

from memheat.analysis import (
    EnergyTrace,
    EnvelopeKind,
    check_integrability,
    envelope,
)
from memheat.analysis.envelope import EnvelopeError
from memheat.exceptions import (
    Indeterminate,
    InvalidParameter,
    NotApplicable,
    TheoremCheckFailed,
)
from memheat.kernel import (
    KernelCertificate,
    RateFunction,
    certify_g2,
    make_kernel,
)

POWER_LAW = make_kernel("power_law", {"a": 1.0, "nu": 3.0})
STRETCHED = make_kernel("stretched_exp", {"a": math.e / 8.0, "alpha": 0.5})
MEMORYLESS = make_kernel("memoryless")
T = np.linspace(0.0, 50.0, 501)


def certificate(p, xi):
    return KernelCertificate(kernel=POWER_LAW, l=0.5, p=p, xi=xi)


def test_integrable_constant_rate():
    result = check_integrability(certify_g2(POWER_LAW))
    assert result.finite
    assert result.tail_exponent == pytest.approx(-1.5)
    assert result.method == "closed_form"
    assert all(np.diff(result.partials) > 0)


def test_not_integrable_decaying_rate():
    result = check_integrability(
        certificate(1.25, RateFunction.power(1.0, -1.0))
    )
    assert not result.finite
    assert result.tail_exponent == 0.0


@pytest.mark.parametrize(
    "p, beta, finite",
    [(1.2, -0.1, True), (1.45, -0.2, False), (1.1, -0.5, True)],
)
def test_power_rate_tail_rule(p, beta, finite):
    # integrand ~ t^(-(q beta + 1)/(2p - 2)) with q = 2p - 1
    result = check_integrability(
        certificate(p, RateFunction.power(2.0, beta))
    )
    growth = (2.0 * p - 1.0) * beta + 1.0
    assert result.tail_exponent == pytest.approx(-growth / (2.0 * p - 2.0))
    assert result.finite is finite


def test_zero_rate_is_not_integrable():
    result = check_integrability(certificate(1.25, RateFunction.zero()))
    assert not result.finite
    assert result.partials[0] == pytest.approx(10.0)


def test_callable_rate():
    rate = RateFunction.from_callable(lambda t: np.full_like(t, 3.0))
    result = check_integrability(certificate(4.0 / 3.0, rate))
    assert result.method == "numerical"
    assert result.finite
    assert result.tail_exponent == pytest.approx(-1.5, abs=1e-2)


def test_callable_rate_borderline():
    rate = RateFunction.from_callable(lambda t: np.full_like(t, 3.0))
    with pytest.raises(Indeterminate):
        check_integrability(certificate(1.5, rate))


def test_integrability_needs_p_above_one():
    with pytest.raises(NotApplicable) as exc:
        check_integrability(certify_g2(STRETCHED))
    assert exc.value.args[0] == EnvelopeError.NOT_APPLICABLE.format(1.0)


def test_optimal_envelope_matches_power_law():
    result = envelope(certify_g2(POWER_LAW), EnergyTrace(T, (1.0 + T) ** -3))
    assert result.kind is EnvelopeKind.OPTIMAL_POLYNOMIAL
    assert result.exponent == pytest.approx(-3.0)
    assert result.lambda0 == pytest.approx(1.0, rel=1e-6)
    assert result.lambda1 == pytest.approx(3.0 ** (-4.0 / 3.0), rel=1e-6)
    assert result.margin >= 0.0
    assert result.assert_holds() is result
    assert np.allclose(result(T), (1.0 + T) ** -3, rtol=1e-5)


def test_exponential_envelope_in_root_time():
    e = 2.0 * np.exp(-0.7 * (np.sqrt(1.0 + T) - 1.0))
    result = envelope(certify_g2(STRETCHED), EnergyTrace(T, e))
    assert result.kind is EnvelopeKind.EXPONENTIAL
    assert result.exponent is None
    assert result.lambda1 == pytest.approx(0.7, rel=1e-6)
    assert result.lambda0 == pytest.approx(2.0, rel=1e-6)
    assert result.margin >= 0.0


def test_general_envelope():
    rate = RateFunction.power(1.0, -1.0)
    e = (1.0 + T) ** -0.5
    result = envelope(certificate(1.25, rate), EnergyTrace(T, e))
    assert result.kind is EnvelopeKind.GENERAL_POLYNOMIAL
    assert result.exponent == pytest.approx(-2.0)
    assert result.margin >= 0.0


def test_memoryless_envelope_is_constant():
    e = np.exp(-20.0 * T)
    result = envelope(certify_g2(MEMORYLESS), EnergyTrace(T, e))
    assert result.kind is EnvelopeKind.EXPONENTIAL
    assert result.lambda1 == 1.0
    assert result.lambda0 == pytest.approx(math.exp(-500.0))
    assert result.margin == 0.0


def test_memoryless_envelope_after_underflow():
    e = np.where(T < 30.0, np.exp(-20.0 * T), 0.0)
    result = envelope(certify_g2(MEMORYLESS), EnergyTrace(T, e))
    assert result.lambda1 == 1.0
    assert result.lambda0 == pytest.approx(math.exp(-500.0))
    assert result.holds

    e = np.where(T < 10.0, np.exp(-T), 0.0)
    result = envelope(certify_g2(MEMORYLESS), EnergyTrace(T, e))
    assert result.lambda0 == 1.0
    assert result.margin == 1.0


def test_lambda0_is_fitted_on_the_window():
    # a startup layer above the tail envelope
    e = (1.0 + T) ** -3 * (1.0 + 5.0 * np.exp(-T))
    result = envelope(certify_g2(POWER_LAW), EnergyTrace(T, e))
    assert result.lambda0 == pytest.approx(1.0, rel=1e-6)
    assert result.margin == 0.0
    assert result(0.0) < e[0]
    mask = T >= 25.0
    assert np.all(e[mask] <= result(T[mask]) * (1.0 + 1e-12))


def test_violated_envelope():
    result = envelope(
        certify_g2(POWER_LAW),
        EnergyTrace(T, (1.0 + T) ** -3),
        lambda0=0.5,
        lambda1=3.0 ** (-4.0 / 3.0),
    )
    assert result.margin == pytest.approx(-1.0)
    with pytest.raises(TheoremCheckFailed) as exc:
        result.assert_holds()
    assert exc.value.margin == result.margin
    assert exc.value.exit_code == 5


def test_invalid_requests():
    trace = EnergyTrace(T, (1.0 + T) ** -3)
    with pytest.raises(InvalidParameter) as exc:
        envelope(certify_g2(POWER_LAW), trace, kind="Exponential")
    assert exc.value.args[0] == EnvelopeError.KIND_FOR_P.format(
        "Exponential", 4.0 / 3.0
    )
    with pytest.raises(InvalidParameter) as exc:
        envelope(certify_g2(POWER_LAW), trace, lambda1=-1.0)
    assert exc.value.args[0] == EnvelopeError.BAD_CONSTANT.format(
        "lambda1", -1.0
    )
    not_integrable = certificate(1.25, RateFunction.power(1.0, -1.0))
    with pytest.raises(InvalidParameter):
        envelope(not_integrable, trace, kind="OptimalPolynomial")
    with pytest.raises(InvalidParameter) as exc:
        envelope(certify_g2(POWER_LAW), EnergyTrace(T, np.zeros_like(T)))
    assert exc.value.args[0] == EnvelopeError.ZERO_TRACE
