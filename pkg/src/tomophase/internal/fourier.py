"""
Continuum-scaled discrete Fourier transforms, band-limited translation, and band-limited refinement.

Transforms approximate F(κ) = (1/√(2π)) ∫ f(u) e^{sign·iκu} du on a reciprocal pair of axes. The exact
phase factors for grids that do not start at zero are applied around an unshifted FFT, so the transform is
exactly unitary in the continuum norm Σ|f|²Δ.
"""
from __future__ import annotations

import logging
import warnings

import numpy as np
import numpy.typing as npt
import scipy.fft
from public import public

from tomophase.internal.complex_field import ComplexField1D
from tomophase.internal.errors import AliasingRisk
from tomophase.internal.sampled_axis import SampledAxis, check_reciprocal, conjugate_axis, refine_axis

logger = logging.getLogger(__name__)

EDGE_SAMPLE_COUNT = 2
EDGE_ENERGY_FRACTION_THRESHOLD = 1e-6


@public
def continuum_dft(
        values: npt.ArrayLike,
        source: SampledAxis,
        target: SampledAxis,
        sign: int,
        array_axis: int = -1,
) -> npt.NDArray[np.complex128]:
    """
    Transforms samples on one axis to samples of the continuum Fourier transform on a reciprocal axis.

    :param values: The samples, with the transformed dimension at `array_axis`.
    :param source: The axis the samples are on.
    :param target: The reciprocal axis to evaluate the transform on.
    :param sign: The sign of the exponent, +1 or -1.
    :param array_axis: The array dimension to transform along.
    :return: The transformed samples.
    """
    if sign not in (-1, 1):
        error_message = f'The transform sign must be +1 or -1, but {sign} was given.'
        raise ValueError(error_message)
    check_reciprocal(source, target)
    values = np.moveaxis(np.asarray(values, dtype=np.complex128), array_axis, -1)
    source_offsets = np.arange(source.n) * source.step
    pre_phase = np.exp(sign * 1j * target.start * source_offsets)
    if sign < 0:
        summed = scipy.fft.fft(values * pre_phase, axis=-1)
    else:
        summed = scipy.fft.ifft(values * pre_phase, axis=-1) * source.n
    post_phase = np.exp(sign * 1j * target.samples * source.start)
    transformed = (source.step / np.sqrt(2 * np.pi)) * post_phase * summed
    return np.moveaxis(transformed, -1, array_axis)


@public
def check_aliasing_risk(values: npt.ArrayLike, description: str, array_axis: int = -1) -> bool:
    """
    Warns when the samples within two samples of either end of an axis carry more than a millionth of the
    total energy.

    :param values: The samples.
    :param description: A description of the samples for the warning message.
    :param array_axis: The array dimension of the axis to check.
    :return: Whether the risk was detected.
    """
    energies = np.abs(np.moveaxis(np.asarray(values), array_axis, -1)) ** 2
    total_energy = float(np.sum(energies))
    if total_energy == 0:
        return False
    edge_energy = float(np.sum(energies[..., :EDGE_SAMPLE_COUNT]) + np.sum(energies[..., -EDGE_SAMPLE_COUNT:]))
    edge_fraction = edge_energy / total_energy
    if edge_fraction > EDGE_ENERGY_FRACTION_THRESHOLD:
        warnings.warn(f'The {description} has {edge_fraction:.3g} of its energy at the axis edges and may be '
                      f'aliased.', AliasingRisk, stacklevel=2)
        return True
    return False


@public
def fourier_1d(field: ComplexField1D, sign: int, target: SampledAxis | None = None) -> ComplexField1D:
    """
    Computes the continuum-scaled Fourier transform of a 1D field.

    :param field: The field.
    :param sign: The sign of the exponent, +1 or -1.
    :param target: The axis to evaluate on. Defaults to the conjugate axis of the field's axis.
    :return: The transformed field.
    """
    if target is None:
        target = conjugate_axis(field.axis)
    check_aliasing_risk(field.values, f'{field.axis.unit} field')
    transformed_values = continuum_dft(field.values, field.axis, target, sign)
    check_aliasing_risk(transformed_values, f'{target.unit} transform')
    return ComplexField1D(axis=target, values=transformed_values)


@public
def translation_axis(axis: SampledAxis) -> SampledAxis:
    """
    Creates the reciprocal axis translations are carried out over. It is the conjugate axis moved by half a step
    for even sample counts, so that it samples zero frequency. Translations over it are periodic in the window:
    a constant stays constant and whole-step shifts are cyclic rolls.

    :param axis: The axis to translate along.
    :return: The reciprocal axis containing zero.
    """
    dual_axis = conjugate_axis(axis)
    if axis.n % 2 == 1:
        return dual_axis
    return SampledAxis.new(center=dual_axis.center - dual_axis.step / 2, span=dual_axis.span, n=dual_axis.n,
                           unit=dual_axis.unit)


@public
def translate_values(
        values: npt.ArrayLike,
        axis: SampledAxis,
        shifts: float | npt.ArrayLike,
        array_axis: int = -1,
) -> npt.NDArray[np.complex128]:
    """
    Translates samples by band-limited (Fourier phase ramp) interpolation over the `translation_axis`, giving
    f(u - shift) on the same axis.

    :param values: The samples, with the translated dimension at `array_axis`.
    :param axis: The axis the samples are on.
    :param shifts: A translation, or a 1D array of translations. An array of translations adds a new leading
                   dimension to the output.
    :param array_axis: The array dimension to translate along.
    :return: The translated samples.
    """
    return _translate(values, axis, translation_axis(axis), shifts, array_axis)


def _translate(
        values: npt.ArrayLike,
        axis: SampledAxis,
        dual_axis: SampledAxis,
        shifts: float | npt.ArrayLike,
        array_axis: int,
) -> npt.NDArray[np.complex128]:
    values = np.moveaxis(np.asarray(values, dtype=np.complex128), array_axis, -1)
    spectrum = continuum_dft(values, axis, dual_axis, -1)
    shifts_array = np.asarray(shifts, dtype=np.float64)
    if shifts_array.ndim == 0:
        phase_ramp = np.exp(-1j * dual_axis.samples * shifts_array)
        translated = continuum_dft(spectrum * phase_ramp, dual_axis, axis, 1)
        return np.moveaxis(translated, -1, array_axis)
    phase_ramps = np.exp(-1j * np.multiply.outer(shifts_array, dual_axis.samples))
    phase_ramps = phase_ramps.reshape((shifts_array.shape[0],) + (1,) * (spectrum.ndim - 1) + (axis.n,))
    translated = continuum_dft(spectrum[np.newaxis] * phase_ramps, dual_axis, axis, 1)
    target_axis = array_axis if array_axis < 0 else array_axis + 1
    return np.moveaxis(translated, -1, target_axis)


@public
def shift_field(field: ComplexField1D, shift: float) -> ComplexField1D:
    """
    Translates a field by band-limited interpolation.

    :param field: The field.
    :param shift: The translation. The returned field samples f(u - shift).
    :return: The translated field.
    """
    return ComplexField1D(axis=field.axis, values=translate_values(field.values, field.axis, shift))


@public
def refine_values(values: npt.ArrayLike, axis: SampledAxis, array_axis: int = -1) -> npt.NDArray[np.complex128]:
    """
    Refines samples onto the 2× refined axis by band-limited interpolation. Even refined samples are the
    original samples and odd refined samples are the half-step midpoints, including the one past the last sample.

    :param values: The samples, with the refined dimension at `array_axis`.
    :param axis: The axis the samples are on.
    :param array_axis: The array dimension to refine along.
    :return: The refined samples.
    """
    values = np.moveaxis(np.asarray(values, dtype=np.complex128), array_axis, -1)
    midpoints = _translate(values, axis, conjugate_axis(axis), -axis.step / 2, -1)
    refined = np.empty(values.shape[:-1] + (2 * axis.n,), dtype=np.complex128)
    refined[..., 0::2] = values
    refined[..., 1::2] = midpoints
    return np.moveaxis(refined, -1, array_axis)


@public
def refine_field(field: ComplexField1D) -> ComplexField1D:
    """
    Refines a field onto the 2× refined version of its axis.

    :param field: The field.
    :return: The refined field.
    """
    return ComplexField1D(axis=refine_axis(field.axis), values=refine_values(field.values, field.axis))


@public
def to_base_domain(field: ComplexField1D) -> ComplexField1D:
    """
    Expresses a field over its base coordinate. Position and frequency fields are returned unchanged. Momentum
    and time fields are transformed with the +1 sign, inverting the -1 sign transform that defines them.

    :param field: The field.
    :return: The field over position or frequency.
    """
    if field.axis.unit.is_base:
        return field
    return fourier_1d(field, sign=1)


def to_base_domain_values(
        values: npt.ArrayLike,
        axis: SampledAxis,
        array_axis: int,
) -> tuple[npt.NDArray[np.complex128], SampledAxis]:
    if axis.unit.is_base:
        return np.asarray(values, dtype=np.complex128), axis
    base_axis = conjugate_axis(axis)
    return continuum_dft(values, axis, base_axis, 1, array_axis=array_axis), base_axis
