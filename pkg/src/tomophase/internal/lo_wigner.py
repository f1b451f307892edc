"""
Closed-form approximation of the phase-sensitive part of the local oscillator Wigner distribution.
"""
from __future__ import annotations

import numpy as np
from public import public

from tomophase.internal.distribution import CombineRule, Dist2D, Dist4D, DistributionKind
from tomophase.internal.errors import RegimeViolationError, UnitMismatchError
from tomophase.internal.local_oscillator import REGIME_WIDTH_RATIO, LOSpec
from tomophase.internal.sampled_axis import AxisUnit, SampledAxis

try:
    from enum import StrEnum
except ImportError:
    from backports.strenum import StrEnum


@public
class LoWignerForm(StrEnum):
    """
    Which part of the approximation to return.
    """
    ENVELOPED = 'enveloped'
    REGIME_LIMIT = 'regime_limit'
    ENVELOPE = 'envelope'


@public
def lo_wigner_approx(
        spec: LOSpec,
        x_axis: SampledAxis,
        p_axis: SampledAxis,
        w_axis: SampledAxis,
        t_axis: SampledAxis,
        form: LoWignerForm = LoWignerForm.ENVELOPED,
) -> Dist4D:
    """
    Approximates the interference term between the focused and collimated local oscillator components, valid
    for A ≫ a and α ≫ β:

        exp[-2x²/A² - 2a²p² - 2ω²/α² - 2β²t²] · cos(2ωt - 2xp + φ)

    The cosine is returned as the real part of the product of complex (x, p) and (ω, t) factors.

    :param spec: The local oscillator specification.
    :param x_axis: The position axis.
    :param p_axis: The momentum axis.
    :param w_axis: The frequency axis.
    :param t_axis: The time axis.
    :param form: The enveloped term, the bare kernel of the regime limit, or the envelope alone.
    :return: The separable approximation.
    """
    if not spec.satisfies_regime():
        error_message = (f'The approximation needs A/a and alpha/beta of at least {REGIME_WIDTH_RATIO}, but A/a is '
                         f'{spec.A / spec.a:.3g} and alpha/beta is {spec.alpha / spec.beta:.3g}.')
        raise RegimeViolationError(error_message)
    expected_units = (AxisUnit.POSITION_MM, AxisUnit.MOMENTUM_RAD_PER_MM, AxisUnit.FREQUENCY_1E13_RAD_S,
                      AxisUnit.TIME_1E_13_S)
    given_units = (x_axis.unit, p_axis.unit, w_axis.unit, t_axis.unit)
    if given_units != expected_units:
        error_message = f'Expected axes with units {expected_units}, but {given_units} were given.'
        raise UnitMismatchError(error_message)
    x = x_axis.samples[:, np.newaxis]
    p = p_axis.samples[np.newaxis, :]
    omega = w_axis.samples[:, np.newaxis]
    t = t_axis.samples[np.newaxis, :]
    envelope_xp = np.exp(-2 * x ** 2 / spec.A ** 2 - 2 * spec.a ** 2 * p ** 2)
    envelope_wt = np.exp(-2 * omega ** 2 / spec.alpha ** 2 - 2 * spec.beta ** 2 * t ** 2)
    kernel_xp = np.exp(-2j * x * p) * np.exp(1j * spec.phi)
    kernel_wt = np.exp(2j * omega * t)
    if form == LoWignerForm.ENVELOPE:
        values_xp, values_wt = envelope_xp.astype(np.complex128), envelope_wt.astype(np.complex128)
        combine_rule = CombineRule.PRODUCT
    elif form == LoWignerForm.REGIME_LIMIT:
        values_xp, values_wt = kernel_xp, kernel_wt
        combine_rule = CombineRule.REAL_PART_OF_PRODUCT
    else:
        values_xp, values_wt = envelope_xp * kernel_xp, envelope_wt * kernel_wt
        combine_rule = CombineRule.REAL_PART_OF_PRODUCT
    factor_xp = Dist2D(axis1=x_axis, axis2=p_axis, values=values_xp, kind=DistributionKind.WIGNER)
    factor_wt = Dist2D(axis1=w_axis, axis2=t_axis, values=values_wt, kind=DistributionKind.WIGNER)
    return Dist4D.new_separable(factor_xp=factor_xp, factor_wt=factor_wt, kind=DistributionKind.WIGNER,
                                combine_rule=combine_rule)
