"""
Forward model of the four-window balanced heterodyne measurement.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from joblib import Parallel, delayed
from public import public
from typing_extensions import Self

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
from tomophase.internal.errors import NotWignerError, OffsetClipping, UnitMismatchError, VanishingScan
from tomophase.internal.fourier import to_base_domain, translate_values
from tomophase.internal.local_oscillator import LocalOscillator
from tomophase.internal.sampled_axis import AxisUnit, SampledAxis, check_axes_match, conjugate_axis
from tomophase.internal.wigner import field_in_position_frequency

logger = logging.getLogger(__name__)


@public
@dataclass(frozen=True)
class ScanGrid:
    """
    The offsets of a measurement scan.

    :ivar dx_axis: The local oscillator position offsets.
    :ivar dp_axis: The lens translations, which offset momentum by dp / f_over_k.
    :ivar dw_axis: The local oscillator frequency offsets.
    :ivar tau_axis: The local oscillator delays.
    :ivar f_over_k: The focal length over the wavenumber, converting lens translation to momentum offset.
    """

    dx_axis: SampledAxis
    dp_axis: SampledAxis
    dw_axis: SampledAxis
    tau_axis: SampledAxis
    f_over_k: float

    @classmethod
    def new(cls, *, dx_axis: SampledAxis, dp_axis: SampledAxis, dw_axis: SampledAxis, tau_axis: SampledAxis,
            f_over_k: float) -> Self:
        """
        Creates a new `ScanGrid`.

        :param dx_axis: The position offsets, on a position axis.
        :param dp_axis: The lens translations, on a momentum tagged axis.
        :param dw_axis: The frequency offsets, on a frequency axis.
        :param tau_axis: The delays, on a time axis.
        :param f_over_k: The focal length over the wavenumber. Must be positive.
        :return: The scan grid.
        """
        expected_units = (AxisUnit.POSITION_MM, AxisUnit.MOMENTUM_RAD_PER_MM, AxisUnit.FREQUENCY_1E13_RAD_S,
                          AxisUnit.TIME_1E_13_S)
        given_units = (dx_axis.unit, dp_axis.unit, dw_axis.unit, tau_axis.unit)
        if given_units != expected_units:
            error_message = f'Scan axes need units {expected_units}, but {given_units} were given.'
            raise UnitMismatchError(error_message)
        if not f_over_k > 0:
            error_message = f'f_over_k must be positive, but {f_over_k} was given.'
            raise ValueError(error_message)
        return cls(dx_axis=dx_axis, dp_axis=dp_axis, dw_axis=dw_axis, tau_axis=tau_axis, f_over_k=float(f_over_k))

    @classmethod
    def conjugate_to(cls, x_axis: SampledAxis, w_axis: SampledAxis, f_over_k: float = 1.0) -> Self:
        """
        Creates the scan grid whose offsets land on the field's position and frequency axes and their
        conjugate momentum and time axes.

        :param x_axis: The field's position axis.
        :param w_axis: The field's frequency axis.
        :param f_over_k: The focal length over the wavenumber.
        :return: The scan grid.
        """
        momentum_axis = conjugate_axis(x_axis)
        dp_axis = SampledAxis.new(center=momentum_axis.center * f_over_k, span=momentum_axis.span * f_over_k,
                                  n=momentum_axis.n, unit=AxisUnit.MOMENTUM_RAD_PER_MM)
        return cls.new(dx_axis=x_axis, dp_axis=dp_axis, dw_axis=w_axis, tau_axis=conjugate_axis(w_axis),
                       f_over_k=f_over_k)

    @property
    def momentum_axis(self) -> SampledAxis:
        """
        The momentum offsets k·dp/f of the lens translations.
        """
        return SampledAxis.new(center=self.dp_axis.center / self.f_over_k, span=self.dp_axis.span / self.f_over_k,
                               n=self.dp_axis.n, unit=AxisUnit.MOMENTUM_RAD_PER_MM)

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.dx_axis.n, self.dp_axis.n, self.dw_axis.n, self.tau_axis.n


@public
@dataclass
class MeasurementScan:
    """
    The quadrature amplitudes S_R + i·S_I recorded over a scan grid. Scans of separable signals are stored as
    (dx, dp) and (dω, τ) factors.

    :ivar grid: The scan grid.
    :ivar factor_xp: The (dx, dp) factor of a separable scan.
    :ivar factor_wt: The (dω, τ) factor of a separable scan.
    :ivar values: The complex quadratures of a dense scan, shaped like the grid.
    """

    grid: ScanGrid
    factor_xp: npt.NDArray[np.complex128] | None = None
    factor_wt: npt.NDArray[np.complex128] | None = None
    values: npt.NDArray[np.complex128] | None = None

    @property
    def is_separable(self) -> bool:
        return self.values is None

    def complex_values(self, memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET_BYTES) -> npt.NDArray[np.complex128]:
        """
        Evaluates S_R + i·S_I over the full grid.

        :param memory_budget_bytes: The memory budget for the dense array.
        :return: The complex quadratures.
        """
        if not self.is_separable:
            return self.values
        check_dense_budget(self.grid.shape, memory_budget_bytes, 'measurement scan')
        return np.multiply.outer(self.factor_xp, self.factor_wt)

    @property
    def s_real(self) -> npt.NDArray[np.float64]:
        """
        The in-phase quadrature S_R over the grid.
        """
        return self.complex_values().real

    @property
    def s_imag(self) -> npt.NDArray[np.float64]:
        """
        The out-of-phase quadrature S_I over the grid.
        """
        return self.complex_values().imag

    def to_kirkwood(self) -> Dist4D:
        """
        Interprets the scan as a time base Kirkwood-Rihaczek distribution over (dx, k·dp/f, dω, τ).

        :return: The distribution.
        """
        x_axis = self.grid.dx_axis
        p_axis = self.grid.momentum_axis
        w_axis = self.grid.dw_axis
        t_axis = self.grid.tau_axis
        if self.is_separable:
            factor_xp = Dist2D(axis1=x_axis, axis2=p_axis, values=self.factor_xp, kind=DistributionKind.KIRKWOOD)
            factor_wt = Dist2D(axis1=w_axis, axis2=t_axis, values=self.factor_wt, kind=DistributionKind.KIRKWOOD)
            return Dist4D.new_separable(factor_xp=factor_xp, factor_wt=factor_wt, kind=DistributionKind.KIRKWOOD,
                                        combine_rule=CombineRule.PRODUCT,
                                        orientation=KirkwoodOrientation.TIME_BASE)
        return Dist4D.new_dense(axes=(x_axis, p_axis, w_axis, t_axis), values=self.values,
                                kind=DistributionKind.KIRKWOOD, orientation=KirkwoodOrientation.TIME_BASE)


def _warn_on_offset_clipping(offsets: npt.ArrayLike, axis: SampledAxis, description: str) -> None:
    largest_offset = float(np.max(np.abs(offsets)))
    if largest_offset > axis.span / 2:
        warnings.warn(f'A {description} offset of {largest_offset:.4g} exceeds half the axis span of {axis.span:.4g}; '
                      f'the shifted local oscillator wraps around the window.', OffsetClipping, stacklevel=3)


@public
def beat_amplitude(
        lo: ComplexField2D,
        sig: ComplexField2D,
        dx: float,
        dw: float,
        dp: float,
        tau: float,
        f_over_k: float,
) -> complex:
    """
    Computes the beat amplitude V_B = ∫dx∫dω E*_LO(x-dx, ω-dw)·E_S(x, ω)·e^{-ix·dp/f_over_k}·e^{-iωτ}.

    :param lo: The local oscillator field.
    :param sig: The signal field.
    :param dx: The local oscillator position offset.
    :param dw: The local oscillator frequency offset.
    :param dp: The lens translation.
    :param tau: The local oscillator delay.
    :param f_over_k: The focal length over the wavenumber.
    :return: The beat amplitude.
    """
    lo_values, x_axis, w_axis = field_in_position_frequency(lo)
    sig_values, sig_x_axis, sig_w_axis = field_in_position_frequency(sig)
    check_axes_match(x_axis, sig_x_axis, 'position')
    check_axes_match(w_axis, sig_w_axis, 'frequency')
    _warn_on_offset_clipping(dx, x_axis, 'position')
    _warn_on_offset_clipping(dw, w_axis, 'frequency')
    shifted = translate_values(translate_values(lo_values, x_axis, dx, array_axis=0), w_axis, dw, array_axis=1)
    momentum_offset = dp / f_over_k
    carrier = np.multiply.outer(np.exp(-1j * x_axis.samples * momentum_offset), np.exp(-1j * w_axis.samples * tau))
    summed = np.sum(np.conj(shifted) * sig_values * carrier)
    return complex(summed * x_axis.step * w_axis.step)


def _shift_factor(values: npt.NDArray, axis1: SampledAxis, axis2: SampledAxis, shift1: float,
                  shift2: float) -> npt.NDArray[np.complex128]:
    return translate_values(translate_values(values, axis1, shift1, array_axis=0), axis2, shift2, array_axis=1)


def _check_distribution_axes(lo_w: Dist4D, sig_w: Dist4D) -> None:
    for lo_axis, sig_axis, name in zip(lo_w.axes, sig_w.axes, ('x', 'p', 'omega', 't')):
        check_axes_match(lo_axis, sig_axis, name)


@public
def mean_square_beat_conv(
        lo_w: Dist4D,
        sig_w: Dist4D,
        point: tuple[float, float, float, float],
        f_over_k: float,
        memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET_BYTES,
) -> float:
    """
    Computes the mean square beat amplitude as the phase-space-time-frequency convolution
    |V_B|² = (2π)² ∫dV W_LO(x-dx, p-dp/f_over_k, ω-dw, t-τ)·W_S(x, p, ω, t).

    :param lo_w: The local oscillator Wigner distribution.
    :param sig_w: The signal Wigner distribution, on the same axes.
    :param point: The offsets (dx, dp, dw, tau).
    :param f_over_k: The focal length over the wavenumber.
    :param memory_budget_bytes: The memory budget for non-separable distributions.
    :return: The mean square beat amplitude.
    """
    for distribution in (lo_w, sig_w):
        if distribution.kind != DistributionKind.WIGNER:
            error_message = f'The convolution needs Wigner distributions, but a {distribution.kind} was given.'
            raise NotWignerError(error_message)
    _check_distribution_axes(lo_w, sig_w)
    dx, dp, dw, tau = point
    momentum_offset = dp / f_over_k
    x_axis, p_axis, w_axis, t_axis = lo_w.axes
    if lo_w.is_separable and sig_w.is_separable:
        shifted_xp = _shift_factor(lo_w.factor_xp.values, x_axis, p_axis, dx, momentum_offset)
        shifted_wt = _shift_factor(lo_w.factor_wt.values, w_axis, t_axis, dw, tau)
        signal_xp = sig_w.factor_xp.values
        signal_wt = sig_w.factor_wt.values
        xp_element = x_axis.step * p_axis.step
        wt_element = w_axis.step * t_axis.step
        direct = np.sum(shifted_xp * signal_xp) * xp_element * np.sum(shifted_wt * signal_wt) * wt_element
        real_part_rules = (lo_w.combine_rule == CombineRule.REAL_PART_OF_PRODUCT,
                           sig_w.combine_rule == CombineRule.REAL_PART_OF_PRODUCT)
        if all(real_part_rules):
            conjugated = (np.sum(shifted_xp * np.conj(signal_xp)) * xp_element *
                          np.sum(shifted_wt * np.conj(signal_wt)) * wt_element)
            total = (np.real(direct) + np.real(conjugated)) / 2
        else:
            total = np.real(direct)
    else:
        lo_values = lo_w.dense_values(memory_budget_bytes)
        sig_values = sig_w.dense_values(memory_budget_bytes)
        shifted = lo_values
        for array_axis, (axis, shift) in enumerate(zip(lo_w.axes, (dx, momentum_offset, dw, tau))):
            shifted = translate_values(shifted, axis, shift, array_axis=array_axis)
        total = np.real(np.sum(shifted * sig_values)) * lo_w.volume_element
    return float((2 * np.pi) ** 2 * total)


def _amplitude_matrix(lo_factor: ComplexField1D, sig_factor: ComplexField1D, shifts: npt.NDArray,
                      carrier_offsets: npt.NDArray) -> npt.NDArray[np.complex128]:
    """
    Computes V[s, q] = Σ_u conj(lo(u - shift_s))·sig(u)·e^{-iuq}·Δ for every shift and carrier offset.
    """
    axis = lo_factor.axis
    shifted = translate_values(lo_factor.values, axis, shifts)
    carrier = np.exp(-1j * np.multiply.outer(axis.samples, carrier_offsets)) * axis.step
    return (np.conj(shifted) * sig_factor.values[np.newaxis, :]) @ carrier


def _finished_quadratures(values: npt.NDArray, normalize: bool, description: str) -> npt.NDArray:  # noqa FBT001
    """
    Scales quadratures to a unit maximum modulus when asked, and warns when they are all zero.
    """
    maximum = float(np.max(np.abs(values)))
    if maximum == 0:
        warnings.warn(f'Every {description} quadrature of the scan is zero; the local oscillator does not beat with '
                      f'the signal.', VanishingScan, stacklevel=4)
        return values
    if not normalize:
        return values
    return values / maximum


def _run_separable_scan(lo: LocalOscillator, sig: SeparableField, grid: ScanGrid,
                        normalize: bool) -> MeasurementScan:  # noqa FBT001
    spatial = to_base_domain(sig.spatial)
    spectral = to_base_domain(sig.spectral)
    check_axes_match(lo.focused.spatial.axis, spatial.axis, 'position')
    check_axes_match(lo.focused.spectral.axis, spectral.axis, 'frequency')
    dx_offsets = grid.dx_axis.samples
    momentum_offsets = grid.momentum_axis.samples
    dw_offsets = grid.dw_axis.samples
    tau_offsets = grid.tau_axis.samples
    focused_xp = _amplitude_matrix(lo.focused.spatial, spatial, dx_offsets, momentum_offsets)
    collimated_xp = _amplitude_matrix(lo.collimated.spatial, spatial, dx_offsets, momentum_offsets)
    focused_wt = _amplitude_matrix(lo.focused.spectral, spectral, dw_offsets, tau_offsets)
    collimated_wt = _amplitude_matrix(lo.collimated.spectral, spectral, dw_offsets, tau_offsets)
    factor_xp = np.conj(focused_xp) * collimated_xp
    factor_wt = np.conj(focused_wt) * collimated_wt
    factor_xp = _finished_quadratures(factor_xp, normalize, 'position-momentum')
    factor_wt = _finished_quadratures(factor_wt, normalize, 'frequency-time')
    return MeasurementScan(grid=grid, factor_xp=factor_xp, factor_wt=factor_wt)


def _dense_scan_row(lo_focused: npt.NDArray, lo_collimated: npt.NDArray, sig_values: npt.NDArray,
                    x_axis: SampledAxis, w_axis: SampledAxis, dx: float, grid: ScanGrid) -> npt.NDArray:
    """
    Computes the quadratures for one position offset, shaped (dp, dω, τ).
    """
    x_carrier = np.exp(-1j * np.multiply.outer(x_axis.samples, grid.momentum_axis.samples)) * x_axis.step
    w_carrier = np.exp(-1j * np.multiply.outer(w_axis.samples, grid.tau_axis.samples)) * w_axis.step
    amplitudes = []
    for component in (lo_focused, lo_collimated):
        shifted = translate_values(component, x_axis, dx, array_axis=0)
        shifted = translate_values(shifted, w_axis, grid.dw_axis.samples, array_axis=1)
        products = np.conj(shifted) * sig_values[np.newaxis]
        amplitude = np.swapaxes(x_carrier.T @ (products @ w_carrier), 0, 1)
        amplitudes.append(amplitude)
    focused_amplitude, collimated_amplitude = amplitudes
    return np.conj(focused_amplitude) * collimated_amplitude


def _run_dense_scan(lo: LocalOscillator, sig: ComplexField2D, grid: ScanGrid, normalize: bool,  # noqa FBT001
                    n_jobs: int, memory_budget_bytes: int) -> MeasurementScan:
    check_dense_budget(grid.shape, memory_budget_bytes, 'measurement scan')
    sig_values, x_axis, w_axis = field_in_position_frequency(sig)
    check_axes_match(lo.focused.spatial.axis, x_axis, 'position')
    check_axes_match(lo.focused.spectral.axis, w_axis, 'frequency')
    lo_focused = np.multiply.outer(lo.focused.spatial.values, lo.focused.spectral.values)
    lo_collimated = np.multiply.outer(lo.collimated.spatial.values, lo.collimated.spectral.values)
    logger.info(f'Running a dense scan of shape {grid.shape} with {n_jobs} jobs.')
    rows = Parallel(n_jobs=n_jobs)(
        delayed(_dense_scan_row)(lo_focused, lo_collimated, sig_values, x_axis, w_axis, dx, grid)
        for dx in grid.dx_axis.samples
    )
    values = np.stack(rows, axis=0)
    values = _finished_quadratures(values, normalize, 'dense')
    return MeasurementScan(grid=grid, values=values)


@public
def run_scan(
        lo: LocalOscillator,
        sig: SeparableField | ComplexField2D,
        grid: ScanGrid,
        *,
        normalize: bool = True,
        n_jobs: int = 1,
        memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET_BYTES,
) -> MeasurementScan:
    """
    Simulates the quadrature scan. At each grid point, the beat amplitudes of the signal with the focused and the
    collimated local oscillator components are formed separately, and S_R + i·S_I = V*_focused·V_collimated is the
    interference term a lock-in at the components' beat frequency isolates.

    :param lo: The local oscillator components.
    :param sig: The signal field.
    :param grid: The scan grid.
    :param normalize: Whether to scale the scan to a unit maximum modulus.
    :param n_jobs: The number of parallel jobs for dense signals.
    :param memory_budget_bytes: The memory budget for dense scans.
    :return: The scan.
    """
    _warn_on_offset_clipping(grid.dx_axis.samples, lo.focused.spatial.axis, 'position')
    _warn_on_offset_clipping(grid.dw_axis.samples, lo.focused.spectral.axis, 'frequency')
    if isinstance(sig, SeparableField):
        return _run_separable_scan(lo, sig, grid, normalize)
    return _run_dense_scan(lo, sig, grid, normalize, n_jobs, memory_budget_bytes)
