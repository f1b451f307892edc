"""
Kirkwood-Rihaczek distributions and their linear inversion to Wigner distributions.
"""
from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt
from public import public

from tomophase.internal.complex_field import ComplexField1D, ComplexField2D, SeparableField
from tomophase.internal.distribution import (
    DEFAULT_MEMORY_BUDGET_BYTES,
    CombineRule,
    Dist2D,
    Dist4D,
    DistributionKind,
    KirkwoodOrientation,
    check_dense_budget,
)
from tomophase.internal.errors import NotKirkwoodError
from tomophase.internal.fourier import check_aliasing_risk, continuum_dft, refine_values, to_base_domain
from tomophase.internal.sampled_axis import SampledAxis, check_reciprocal, conjugate_axis, refine_axis
from tomophase.internal.wigner import field_in_position_frequency

logger = logging.getLogger(__name__)


@public
def kirkwood_1d(field: ComplexField1D) -> Dist2D:
    """
    Computes the Kirkwood-Rihaczek distribution f*(u)·f̃(κ)·e^{iuκ}/√(2π) of a 1D field, with f̃ the -1 sign
    transform of f over its base coordinate.

    :param field: The field.
    :return: The distribution over the base axis and the conjugate axis.
    """
    field = to_base_domain(field)
    base_axis = field.axis
    target_axis = conjugate_axis(base_axis)
    check_aliasing_risk(field.values, f'{base_axis.unit} field')
    transformed = continuum_dft(field.values, base_axis, target_axis, -1)
    check_aliasing_risk(transformed, f'{target_axis.unit} transform')
    phase = np.exp(1j * np.multiply.outer(base_axis.samples, target_axis.samples))
    values = np.multiply.outer(np.conj(field.values), transformed) * phase / np.sqrt(2 * np.pi)
    return Dist2D(axis1=base_axis, axis2=target_axis, values=values, kind=DistributionKind.KIRKWOOD)


@public
def kirkwood_4d(field: SeparableField | ComplexField2D,
                memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET_BYTES) -> Dist4D:
    """
    Computes the Kirkwood-Rihaczek distribution E*(x,ω)·Ẽ(p,t)·e^{i(xp+ωt)}/(2π) of a field. Separable fields give a
    separable distribution, dense fields a dense one.

    :param field: The field.
    :param memory_budget_bytes: The memory budget for dense outputs.
    :return: The distribution in the frequency base orientation.
    """
    if isinstance(field, SeparableField):
        return Dist4D.new_separable(factor_xp=kirkwood_1d(field.spatial), factor_wt=kirkwood_1d(field.spectral),
                                    kind=DistributionKind.KIRKWOOD, combine_rule=CombineRule.PRODUCT)
    values, x_axis, w_axis = field_in_position_frequency(field)
    p_axis = conjugate_axis(x_axis)
    t_axis = conjugate_axis(w_axis)
    check_dense_budget((x_axis.n, p_axis.n, w_axis.n, t_axis.n), memory_budget_bytes, 'Kirkwood distribution')
    check_aliasing_risk(values, 'field along x', array_axis=0)
    check_aliasing_risk(values, 'field along omega', array_axis=1)
    transformed = continuum_dft(continuum_dft(values, x_axis, p_axis, -1, array_axis=0), w_axis, t_axis, -1,
                                array_axis=1)
    xp_phase = np.exp(1j * np.multiply.outer(x_axis.samples, p_axis.samples))
    wt_phase = np.exp(1j * np.multiply.outer(w_axis.samples, t_axis.samples))
    distribution_values = (np.conj(values)[:, np.newaxis, :, np.newaxis] * transformed[np.newaxis, :, np.newaxis, :] *
                           xp_phase[:, :, np.newaxis, np.newaxis] * wt_phase[np.newaxis, np.newaxis, :, :])
    distribution_values /= 2 * np.pi
    return Dist4D.new_dense(axes=(x_axis, p_axis, w_axis, t_axis), values=distribution_values,
                            kind=DistributionKind.KIRKWOOD)


def invert_pair(values: npt.NDArray, base_axis: SampledAxis, conjugate: SampledAxis) -> npt.NDArray[np.complex128]:
    """
    Applies the kernel integral I(u,κ) = ∫∫ du₀dκ₀ e^{-2i(u-u₀)(κ-κ₀)} K(u₀,κ₀) to a Kirkwood-Rihaczek pair,
    with the pair in the last two dimensions and leading dimensions treated as a batch.

    The sampled distribution is first resampled onto the refined base axis and a 4n point conjugate axis,
    where the discrete kernel sum reproduces π times the sampled Wigner distribution exactly.

    :param values: The distribution values, shaped (..., n_u, n_κ).
    :param base_axis: The base axis.
    :param conjugate: The conjugate axis.
    :return: The kernel integral on the refined base axis and the conjugate axis, shaped (..., 2n_u, n_κ).
    """
    check_reciprocal(base_axis, conjugate)
    n = base_axis.n
    base_samples = base_axis.samples
    conjugate_samples = conjugate.samples
    demodulated = np.sqrt(2 * np.pi) * values * np.exp(-1j * np.multiply.outer(base_samples, conjugate_samples))
    correlation = continuum_dft(demodulated, conjugate, base_axis, 1, array_axis=-1)
    correlation = refine_values(refine_values(correlation, base_axis, array_axis=-2), base_axis, array_axis=-1)
    refined_axis = refine_axis(base_axis)
    padded_count = 4 * n
    padded_axis = SampledAxis.new(center=refined_axis.start + (padded_count - 1) * refined_axis.step / 2,
                                  span=(padded_count - 1) * refined_axis.step, n=padded_count, unit=base_axis.unit)
    padded_conjugate = conjugate_axis(padded_axis)
    padded = np.zeros(correlation.shape[:-1] + (padded_count,), dtype=np.complex128)
    padded[..., :2 * n] = correlation
    refined_samples = refined_axis.samples
    padded_conjugate_samples = padded_conjugate.samples
    transformed = continuum_dft(padded, padded_axis, padded_conjugate, -1, array_axis=-1)
    refined_kirkwood = (transformed * np.exp(1j * np.multiply.outer(refined_samples, padded_conjugate_samples)) /
                        np.sqrt(2 * np.pi))
    weights = (np.exp(-2j * np.multiply.outer(refined_samples, padded_conjugate_samples)) * refined_axis.step *
               padded_conjugate.step)
    weighted = refined_kirkwood * weights
    conjugate_kernel = np.exp(2j * np.multiply.outer(refined_samples, conjugate_samples))
    base_kernel = np.exp(2j * np.multiply.outer(refined_samples, padded_conjugate_samples))
    summed = base_kernel @ (np.swapaxes(weighted, -1, -2) @ conjugate_kernel)
    return np.exp(-2j * np.multiply.outer(refined_samples, conjugate_samples)) * summed


def invert_time_base_pair(values: npt.NDArray, w_axis: SampledAxis, t_axis: SampledAxis) -> npt.NDArray[np.complex128]:
    """
    Applies the kernel integral to a time base (ω, t) pair. A time base distribution is the complex conjugate of
    the frequency base one, so the pair is conjugated, inverted, and conjugated back.

    :param values: The distribution values, shaped (..., n_ω, n_t).
    :param w_axis: The frequency axis.
    :param t_axis: The time axis.
    :return: The kernel integral over the refined frequency axis and the time axis, shaped (..., 2n_ω, n_t).
    """
    return np.conj(invert_pair(np.conj(values), w_axis, t_axis))


def _inversion_constant(kirkwood_total: complex, kernel_total: complex) -> float:
    kernel_real_total = float(np.real(kernel_total))
    if kernel_real_total == 0:
        return 0.0
    return float(np.real(kirkwood_total)) / kernel_real_total


def _invert_separable(kirkwood: Dist4D) -> Dist4D:
    factor_xp = kirkwood.factor_xp
    factor_wt = kirkwood.factor_wt
    inverted_xp = invert_pair(factor_xp.values, factor_xp.axis1, factor_xp.axis2)
    xp_axes = (refine_axis(factor_xp.axis1), factor_xp.axis2)
    if kirkwood.orientation == KirkwoodOrientation.TIME_BASE:
        inverted_wt = invert_time_base_pair(factor_wt.values, factor_wt.axis1, factor_wt.axis2)
    else:
        inverted_wt = invert_pair(factor_wt.values, factor_wt.axis1, factor_wt.axis2)
    wt_axes = (refine_axis(factor_wt.axis1), factor_wt.axis2)
    xp_constant = _inversion_constant(np.sum(factor_xp.values) * factor_xp.area_element,
                                      np.sum(inverted_xp) * xp_axes[0].step * xp_axes[1].step)
    wt_constant = _inversion_constant(np.sum(factor_wt.values) * factor_wt.area_element,
                                      np.sum(inverted_wt) * wt_axes[0].step * wt_axes[1].step)
    logger.debug(f'Inversion constants are {xp_constant} for (x, p) and {wt_constant} for (omega, t).')
    wigner_xp = Dist2D(axis1=xp_axes[0], axis2=xp_axes[1], values=xp_constant * inverted_xp,
                       kind=DistributionKind.WIGNER)
    wigner_wt = Dist2D(axis1=wt_axes[0], axis2=wt_axes[1], values=wt_constant * inverted_wt,
                       kind=DistributionKind.WIGNER)
    return Dist4D.new_separable(factor_xp=wigner_xp, factor_wt=wigner_wt, kind=DistributionKind.WIGNER,
                                combine_rule=CombineRule.REAL_PART_OF_PRODUCT)


def _invert_dense(kirkwood: Dist4D, memory_budget_bytes: int) -> Dist4D:
    x_axis, p_axis, w_axis, t_axis = kirkwood.axes
    time_base = kirkwood.orientation == KirkwoodOrientation.TIME_BASE
    output_axes = (refine_axis(x_axis), p_axis, refine_axis(w_axis), t_axis)
    output_shape = tuple(axis.n for axis in output_axes)
    check_dense_budget(output_shape, memory_budget_bytes, 'inverted Wigner distribution')
    spectral_major = np.transpose(kirkwood.values, (2, 3, 0, 1))
    partially_inverted = np.empty((w_axis.n, t_axis.n, 2 * x_axis.n, p_axis.n), dtype=np.complex128)
    for w_index in range(w_axis.n):
        partially_inverted[w_index] = invert_pair(spectral_major[w_index], x_axis, p_axis)
    spatial_major = np.transpose(partially_inverted, (2, 3, 0, 1))
    inverted = np.empty(output_shape, dtype=np.complex128)
    for x_index in range(spatial_major.shape[0]):
        if time_base:
            inverted[x_index] = invert_time_base_pair(spatial_major[x_index], w_axis, t_axis)
        else:
            inverted[x_index] = invert_pair(spatial_major[x_index], w_axis, t_axis)
    output_volume_element = float(np.prod([axis.step for axis in output_axes]))
    constant = _inversion_constant(np.sum(kirkwood.values) * kirkwood.volume_element,
                                   np.sum(inverted) * output_volume_element)
    return Dist4D.new_dense(axes=output_axes, values=(constant * inverted).real.astype(np.complex128),
                            kind=DistributionKind.WIGNER)


@public
def invert_k_to_w(kirkwood: Dist4D, memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET_BYTES) -> Dist4D:
    """
    Inverts a Kirkwood-Rihaczek distribution to the Wigner distribution by the kernel integral
    W ∝ Re ∫ dV₀ e^{-2i[(x-x₀)(p-p₀) + (ω-ω₀)(t-t₀)]} K(x₀, p₀, ω₀, t₀). The constant is fixed so each pair's
    total integral matches the total integral of the input.

    :param kirkwood: The Kirkwood-Rihaczek distribution.
    :param memory_budget_bytes: The memory budget for dense inputs.
    :return: The Wigner distribution, with base coordinates on refined axes.
    """
    if kirkwood.kind != DistributionKind.KIRKWOOD:
        error_message = f'Inversion needs a Kirkwood-Rihaczek distribution, but a {kirkwood.kind} was given.'
        raise NotKirkwoodError(error_message)
    if kirkwood.is_separable:
        return _invert_separable(kirkwood)
    return _invert_dense(kirkwood, memory_budget_bytes)
