"""
The two-component local oscillator of the four-window heterodyne measurement.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from public import public
from typing_extensions import Self

from tomophase.internal.complex_field import ComplexField1D, ComplexField2D, SeparableField, densify
from tomophase.internal.errors import AxisMismatchError, UnitMismatchError
from tomophase.internal.fourier import continuum_dft, translation_axis
from tomophase.internal.sampled_axis import AxisUnit, SampledAxis

REGIME_WIDTH_RATIO = 10.0
IDEAL_NARROW_WIDTH = 1e-4
IDEAL_BROAD_WIDTH = 1e4


@public
@dataclass(frozen=True)
class LOSpec:
    """
    The parameters of the local oscillator. The focused component is spatially narrow and spectrally broad,
    the collimated component is spatially broad and spectrally narrow.

    :ivar a: The focused component's spatial width in mm.
    :ivar A: The collimated component's spatial width in mm.
    :ivar alpha: The focused component's bandwidth in 10¹³ rad/s.
    :ivar beta: The collimated component's bandwidth in 10¹³ rad/s.
    :ivar gamma: The relative amplitude of the collimated component.
    :ivar phi: The relative phase of the collimated component in rad.
    """

    a: float
    A: float  # noqa N815
    alpha: float
    beta: float
    gamma: float
    phi: float

    @classmethod
    def new(
            cls,
            *,
            a: float = 0.05,
            A: float = 1.0,  # noqa N803
            alpha: float = 2.0,
            beta: float = 0.05,
            gamma: float = 1.0,
            phi: float = 0.0,
    ) -> Self:
        """
        Creates a new `LOSpec`.

        :param a: The focused component's spatial width. Must be positive.
        :param A: The collimated component's spatial width. Must be positive.
        :param alpha: The focused component's bandwidth. Must be positive.
        :param beta: The collimated component's bandwidth. Must be positive.
        :param gamma: The relative amplitude of the collimated component. Must not be negative.
        :param phi: The relative phase of the collimated component.
        :return: The local oscillator specification.
        """
        if not (a > 0 and A > 0 and alpha > 0 and beta > 0):
            error_message = f'Local oscillator widths must be positive, but a={a}, A={A}, alpha={alpha}, beta={beta}.'
            raise ValueError(error_message)
        if gamma < 0:
            error_message = f'The local oscillator gamma must not be negative, but {gamma} was given.'
            raise ValueError(error_message)
        return cls(a=float(a), A=float(A), alpha=float(alpha), beta=float(beta), gamma=float(gamma), phi=float(phi))

    @classmethod
    def ideal(cls, *, gamma: float = 1.0, phi: float = 0.0) -> Self:
        """
        Creates the limiting local oscillator whose focused component is a point in space and flat in frequency
        and whose collimated component is flat in space and a single frequency. Its scan reproduces the
        Kirkwood-Rihaczek distribution up to the grid resolution.

        :param gamma: The relative amplitude of the collimated component.
        :param phi: The relative phase of the collimated component.
        :return: The local oscillator specification.
        """
        return cls.new(a=IDEAL_NARROW_WIDTH, A=IDEAL_BROAD_WIDTH, alpha=IDEAL_BROAD_WIDTH, beta=IDEAL_NARROW_WIDTH,
                       gamma=gamma, phi=phi)

    def satisfies_regime(self, width_ratio: float = REGIME_WIDTH_RATIO) -> bool:
        """
        Checks whether the widths satisfy the A ≫ a and α ≫ β approximation regime.

        :param width_ratio: The minimum ratio counted as much greater.
        :return: Whether the regime holds.
        """
        return self.A / self.a >= width_ratio and self.alpha / self.beta >= width_ratio


@public
@dataclass
class LocalOscillator:
    """
    The two components of a local oscillator, sharing the normalization of the full field.

    :ivar focused: The focused broadband component.
    :ivar collimated: The collimated narrowband component, including the γ·e^{iφ} factor.
    :ivar normalization: The factor the unnormalized sum was divided by.
    """

    focused: SeparableField
    collimated: SeparableField
    normalization: float

    def densify(self) -> ComplexField2D:
        """
        Evaluates the full local oscillator field.

        :return: The sum of the densified components.
        """
        focused = densify(self.focused)
        collimated = densify(self.collimated)
        return ComplexField2D(axis1=focused.axis1, axis2=focused.axis2, values=focused.values + collimated.values,
                              domain=focused.domain)


def _check_local_oscillator_axes(x_axis: SampledAxis, w_axis: SampledAxis) -> None:
    if x_axis.unit != AxisUnit.POSITION_MM or w_axis.unit != AxisUnit.FREQUENCY_1E13_RAD_S:
        error_message = (f'A local oscillator needs position and frequency axes, but {x_axis.unit} and '
                         f'{w_axis.unit} were given.')
        raise UnitMismatchError(error_message)


def _gaussian_factor(width: float, axis: SampledAxis) -> npt.NDArray[np.complex128]:
    """
    Evaluates exp(-u²/2w²) on an axis. A Gaussian narrower than one step is rebuilt from its analytic spectrum
    on the translation axis, so it stays band-limited instead of vanishing between samples, and a translation by
    a sample coordinate turns it into a single sample.
    """
    if width >= axis.step:
        return np.exp(-axis.samples ** 2 / (2 * width ** 2)).astype(np.complex128)
    dual = translation_axis(axis)
    spectrum = width * np.exp(-(width * dual.samples) ** 2 / 2)
    return continuum_dft(spectrum, dual, axis, 1)


def _gaussian_component(width_x: float, width_w: float, x_axis: SampledAxis, w_axis: SampledAxis,
                        amplitude: complex) -> SeparableField:
    spatial_values = amplitude * _gaussian_factor(width_x, x_axis)
    spectral_values = _gaussian_factor(width_w, w_axis)
    return SeparableField(spatial=ComplexField1D(axis=x_axis, values=spatial_values),
                          spectral=ComplexField1D(axis=w_axis, values=spectral_values))


@public
def build_lo_components(spec: LOSpec, x_axis: SampledAxis, w_axis: SampledAxis) -> LocalOscillator:
    """
    Builds the focused and collimated local oscillator components, scaled so their sum has unit norm.

    :param spec: The local oscillator specification.
    :param x_axis: The position axis.
    :param w_axis: The frequency axis.
    :return: The local oscillator components.
    """
    _check_local_oscillator_axes(x_axis, w_axis)
    focused = _gaussian_component(spec.a, spec.alpha, x_axis, w_axis, 1.0)
    collimated = _gaussian_component(spec.A, spec.beta, x_axis, w_axis, spec.gamma * np.exp(1j * spec.phi))
    if focused.norm == 0 or (spec.gamma > 0 and collimated.norm == 0):
        error_message = (f'The local oscillator vanishes on axes spanning {x_axis.start}..{x_axis.stop} mm and '
                         f'{w_axis.start}..{w_axis.stop} x10^13 rad/s, which must cover the origin.')
        raise AxisMismatchError(error_message)
    unnormalized = LocalOscillator(focused=focused, collimated=collimated, normalization=1.0).densify()
    normalization = unnormalized.norm
    for component in (focused, collimated):
        component.spatial.values = component.spatial.values / normalization
    return LocalOscillator(focused=focused, collimated=collimated, normalization=normalization)


@public
def build_lo(spec: LOSpec, x_axis: SampledAxis, w_axis: SampledAxis) -> ComplexField2D:
    """
    Builds the unit-normalized local oscillator field. The sum of two separable components is not separable,
    so the field is returned dense.

    :param spec: The local oscillator specification.
    :param x_axis: The position axis.
    :param w_axis: The frequency axis.
    :return: The local oscillator field.
    """
    return build_lo_components(spec, x_axis, w_axis).densify()
