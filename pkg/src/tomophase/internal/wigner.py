"""
Wigner distributions of sampled fields.

The Wigner distribution of a Fourier pair (u, κ), with u the base coordinate (x or ω), is

    W(u, κ) = (1/2π) ∫ dε e^{iεκ} f*(u + ε/2) f(u - ε/2).

The field is refined 2× by band-limited interpolation, so the half-step products are available on the refined
grid, and the ε sum at step Δ is folded modulo n onto the conjugate axis and transformed with one FFT. Values
are reported on the refined base axis and the original conjugate axis, where both marginal identities hold to
round-off.
"""
from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt
import scipy.fft
from public import public

from tomophase.internal.complex_field import ComplexField1D, ComplexField2D, SeparableField
from tomophase.internal.distribution import (
    DEFAULT_MEMORY_BUDGET_BYTES,
    CombineRule,
    Dist2D,
    Dist4D,
    DistributionKind,
    check_dense_budget,
)
from tomophase.internal.errors import AxisMismatchError
from tomophase.internal.fourier import check_aliasing_risk, refine_values, to_base_domain, to_base_domain_values
from tomophase.internal.sampled_axis import SampledAxis, conjugate_axis, refine_axis

logger = logging.getLogger(__name__)


def fold_and_transform(products: npt.NDArray, n: int, step: float, array_axis: int = -1) -> npt.NDArray:
    """
    Evaluates (step/2π) Σ_j products_j e^{ijΔκ_m} on the conjugate axis, for products at offsets j from -(n-1) to
    n-1, by folding the offsets modulo n and applying an inverse FFT. Phases from a nonzero conjugate axis start
    must already be applied to the products.

    :param products: The products, with the 2n-1 offsets along `array_axis`.
    :param n: The number of samples of the original axis.
    :param step: The step of the original axis.
    :param array_axis: The array dimension of the offsets.
    :return: The transformed values, with n conjugate samples along `array_axis`.
    """
    products = np.moveaxis(products, array_axis, -1)
    folded = np.zeros(products.shape[:-1] + (n,), dtype=np.complex128)
    folded += products[..., n - 1:]
    folded[..., 1:] += products[..., :n - 1]
    transformed = (step / (2 * np.pi)) * n * scipy.fft.ifft(folded, axis=-1)
    return np.moveaxis(transformed, -1, array_axis)


def correlation_transform(
        first_refined: npt.NDArray,
        second_refined: npt.NDArray,
        axis: SampledAxis,
) -> npt.NDArray[np.complex128]:
    """
    Computes (1/2π) Σ_j Δ e^{ijΔκ} first*(u + jΔ/2) second(u - jΔ/2) at every refined point u and every
    conjugate κ, with leading dimensions treated as a batch.

    :param first_refined: The conjugated field on the refined axis, shaped (..., 2n).
    :param second_refined: The other field on the refined axis, shaped (..., 2n).
    :param axis: The original base axis.
    :return: The transform, shaped (..., 2n, n).
    """
    n = axis.n
    refined_count = 2 * n
    refined_indexes = np.arange(refined_count)[:, np.newaxis]
    offsets = np.arange(-(n - 1), n)[np.newaxis, :]
    plus_indexes = refined_indexes + offsets
    minus_indexes = refined_indexes - offsets
    valid = ((plus_indexes >= 0) & (plus_indexes < refined_count) &
             (minus_indexes >= 0) & (minus_indexes < refined_count))
    plus_indexes = np.clip(plus_indexes, 0, refined_count - 1)
    minus_indexes = np.clip(minus_indexes, 0, refined_count - 1)
    products = np.conj(first_refined[..., plus_indexes]) * second_refined[..., minus_indexes]
    products = np.where(valid, products, 0)
    conjugate_start = conjugate_axis(axis).start
    products = products * np.exp(1j * offsets * axis.step * conjugate_start)
    return fold_and_transform(products, n, axis.step)


@public
def cross_wigner_1d(first: ComplexField1D, second: ComplexField1D) -> Dist2D:
    """
    Computes the cross-Wigner distribution (1/2π) ∫ dε e^{iεκ} first*(u + ε/2) second(u - ε/2).

    :param first: The conjugated field.
    :param second: The other field, on the same axis.
    :return: The distribution over the refined base axis and the conjugate axis.
    """
    if not first.axis.matches(second.axis):
        error_message = f'Cross-Wigner fields must share an axis, but {first.axis} and {second.axis} were given.'
        raise AxisMismatchError(error_message)
    first = to_base_domain(first)
    second = to_base_domain(second)
    base_axis = first.axis
    check_aliasing_risk(first.values, f'{base_axis.unit} field')
    if second is not first:
        check_aliasing_risk(second.values, f'{base_axis.unit} field')
    first_refined = refine_values(first.values, base_axis)
    second_refined = first_refined if second is first else refine_values(second.values, base_axis)
    values = correlation_transform(first_refined, second_refined, base_axis)
    return Dist2D(axis1=refine_axis(base_axis), axis2=conjugate_axis(base_axis), values=values,
                  kind=DistributionKind.WIGNER)


@public
def wigner_1d(field: ComplexField1D) -> Dist2D:
    """
    Computes the Wigner distribution of a 1D field.

    :param field: The field.
    :return: The distribution over the refined base axis and the conjugate axis.
    """
    return cross_wigner_1d(field, field)


@public
def wigner_4d(field: SeparableField) -> Dist4D:
    """
    Computes the Wigner distribution of a separable field as the product of the factor distributions.

    :param field: The field.
    :return: The separable distribution.
    """
    factor_xp = wigner_1d(field.spatial)
    factor_wt = wigner_1d(field.spectral)
    return Dist4D.new_separable(factor_xp=factor_xp, factor_wt=factor_wt, kind=DistributionKind.WIGNER,
                                combine_rule=CombineRule.PRODUCT)


def field_in_position_frequency(field: ComplexField2D) -> tuple[npt.NDArray[np.complex128], SampledAxis, SampledAxis]:
    """
    Expresses a dense field over (x, ω).

    :param field: The field.
    :return: The values and the position and frequency axes.
    """
    values, x_axis = to_base_domain_values(field.values, field.axis1, array_axis=0)
    values, w_axis = to_base_domain_values(values, field.axis2, array_axis=1)
    return values, x_axis, w_axis


@public
def wigner_4d_dense(field: ComplexField2D, memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET_BYTES) -> Dist4D:
    """
    Computes the Wigner distribution of a non-separable field as a dense array over the refined x axis, the p axis,
    the refined ω axis, and the t axis.

    :param field: The field.
    :param memory_budget_bytes: The memory budget for the dense output.
    :return: The dense distribution.
    """
    values, x_axis, w_axis = field_in_position_frequency(field)
    nx = x_axis.n
    output_shape = (2 * nx, nx, 2 * w_axis.n, w_axis.n)
    check_dense_budget(output_shape, memory_budget_bytes, 'Wigner distribution')
    check_aliasing_risk(values, 'field along x', array_axis=0)
    check_aliasing_risk(values, 'field along omega', array_axis=1)
    refined = refine_values(refine_values(values, x_axis, array_axis=0), w_axis, array_axis=1)
    p_start = conjugate_axis(x_axis).start
    distribution_values = np.empty(output_shape, dtype=np.complex128)
    logger.debug(f'Computing a dense Wigner distribution of shape {output_shape}.')
    for refined_index in range(2 * nx):
        offset_limit = min(refined_index, 2 * nx - 1 - refined_index)
        offsets = np.arange(-offset_limit, offset_limit + 1)
        inner = correlation_transform(refined[refined_index + offsets], refined[refined_index - offsets], w_axis)
        products = np.zeros((2 * nx - 1,) + inner.shape[1:], dtype=np.complex128)
        products[offsets + nx - 1] = inner * np.exp(1j * offsets * x_axis.step * p_start)[:, np.newaxis, np.newaxis]
        distribution_values[refined_index] = fold_and_transform(products, nx, x_axis.step, array_axis=0)
    axes = (refine_axis(x_axis), conjugate_axis(x_axis), refine_axis(w_axis), conjugate_axis(w_axis))
    return Dist4D.new_dense(axes=axes, values=distribution_values, kind=DistributionKind.WIGNER)
