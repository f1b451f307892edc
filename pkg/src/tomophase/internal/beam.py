"""
Chirped Gaussian signal beams and binary masks.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from public import public
from typing_extensions import Self

from tomophase.internal.complex_field import ComplexField1D, SeparableField
from tomophase.internal.errors import UnitMismatchError
from tomophase.internal.sampled_axis import AxisUnit, SampledAxis

try:
    from enum import StrEnum
except ImportError:
    from backports.strenum import StrEnum

logger = logging.getLogger(__name__)

DEFAULT_WAVELENGTH_MM = 800e-6
DEFAULT_CURVATURE_RADIUS_MM = -10_000.0


@public
def chirp_from_curvature(wavelength_mm: float, radius_mm: float) -> float:
    """
    Computes the spatial chirp coefficient k/2R of a wavefront with curvature radius R.

    :param wavelength_mm: The optical wavelength in mm.
    :param radius_mm: The wavefront curvature radius in mm.
    :return: The chirp coefficient in rad/mm².
    """
    wavenumber = 2 * np.pi / wavelength_mm
    return wavenumber / (2 * radius_mm)


DEFAULT_CHIRP = chirp_from_curvature(DEFAULT_WAVELENGTH_MM, DEFAULT_CURVATURE_RADIUS_MM)


@public
class SecondDomain(StrEnum):
    """
    The domain the non-spatial factor of a beam is specified in.
    """
    TIME = 'time'
    FREQUENCY = 'frequency'

    @property
    def unit(self) -> AxisUnit:
        if self == SecondDomain.TIME:
            return AxisUnit.TIME_1E_13_S
        return AxisUnit.FREQUENCY_1E13_RAD_S


@public
@dataclass(frozen=True)
class GaussianBeamSpec:
    """
    The parameters of a chirped Gaussian beam.

    :ivar sigma_x: The spatial width in mm.
    :ivar sigma_2: The temporal width (10⁻¹³ s) or spectral width (10¹³ rad/s), depending on `second_domain`.
    :ivar chirp: The spatial chirp coefficient in rad/mm².
    :ivar omega0: The central frequency in 10¹³ rad/s. Only affects frequency domain beams.
    :ivar second_domain: The domain the second factor is specified in.
    """

    sigma_x: float
    sigma_2: float
    chirp: float
    omega0: float
    second_domain: SecondDomain

    @classmethod
    def new(
            cls,
            *,
            sigma_x: float = 1.0,
            sigma_2: float = 1.0,
            chirp: float = 0.0,
            omega0: float = 0.0,
            second_domain: SecondDomain = SecondDomain.TIME,
    ) -> Self:
        """
        Creates a new `GaussianBeamSpec`.

        :param sigma_x: The spatial width in mm. Must be positive.
        :param sigma_2: The temporal or spectral width. Must be positive.
        :param chirp: The spatial chirp coefficient in rad/mm².
        :param omega0: The central frequency in 10¹³ rad/s.
        :param second_domain: The domain the second factor is specified in.
        :return: The beam specification.
        """
        if not (sigma_x > 0 and sigma_2 > 0):
            error_message = f'Beam widths must be positive, but sigma_x={sigma_x} and sigma_2={sigma_2} were given.'
            raise ValueError(error_message)
        return cls(sigma_x=float(sigma_x), sigma_2=float(sigma_2), chirp=float(chirp), omega0=float(omega0),
                   second_domain=SecondDomain(second_domain))

    @classmethod
    def wire(cls) -> Self:
        """
        The chirped 200 fs pulse illuminating the wire.
        """
        return cls.new(sigma_x=0.85, sigma_2=2.0, chirp=DEFAULT_CHIRP, second_domain=SecondDomain.TIME)

    @classmethod
    def absorption_filter(cls) -> Self:
        """
        The 5 THz linewidth beam passing the absorption filter.
        """
        return cls.new(sigma_x=0.85, sigma_2=0.5, omega0=0.0, second_domain=SecondDomain.FREQUENCY)


@public
class MaskAxisRole(StrEnum):
    POSITION = 'position'
    FREQUENCY = 'frequency'


@public
@dataclass(frozen=True)
class MaskSpec:
    """
    A binary stop-band mask.

    :ivar lo: The lower edge of the band.
    :ivar hi: The upper edge of the band.
    :ivar axis_role: The coordinate the mask acts on.
    """

    lo: float
    hi: float
    axis_role: MaskAxisRole

    @classmethod
    def new(cls, *, lo: float, hi: float, axis_role: MaskAxisRole) -> Self:
        if not lo < hi:
            error_message = f'A mask needs lo < hi, but lo={lo} and hi={hi} were given.'
            raise ValueError(error_message)
        return cls(lo=float(lo), hi=float(hi), axis_role=MaskAxisRole(axis_role))

    @classmethod
    def wire(cls) -> Self:
        """
        The 0.6 mm diameter wire.
        """
        return cls.new(lo=-0.3, hi=0.3, axis_role=MaskAxisRole.POSITION)

    @classmethod
    def absorption_filter(cls) -> Self:
        """
        The 2 THz wide absorption filter.
        """
        return cls.new(lo=-0.1, hi=0.1, axis_role=MaskAxisRole.FREQUENCY)


@public
def build_beam(spec: GaussianBeamSpec, ax1: SampledAxis, ax2: SampledAxis) -> SeparableField:
    """
    Builds a unit-normalized chirped Gaussian beam.

    :param spec: The beam specification.
    :param ax1: The position axis.
    :param ax2: The time or frequency axis, matching `spec.second_domain`.
    :return: The beam.
    """
    if ax1.unit != AxisUnit.POSITION_MM:
        error_message = f'The first beam axis must be a position axis, but has unit {ax1.unit}.'
        raise UnitMismatchError(error_message)
    if ax2.unit != spec.second_domain.unit:
        error_message = (f'A {spec.second_domain} domain beam needs a {spec.second_domain.unit} axis, but the axis '
                         f'has unit {ax2.unit}.')
        raise UnitMismatchError(error_message)
    x = ax1.samples
    spatial_values = np.exp(-x ** 2 / (2 * spec.sigma_x ** 2)) * np.exp(1j * spec.chirp * x ** 2)
    second = ax2.samples
    if spec.second_domain == SecondDomain.TIME:
        if spec.omega0 != 0:
            logger.debug(f'Dropping the constant carrier phase of omega0={spec.omega0} for a time domain beam.')
        spectral_values = np.exp(-second ** 2 / (2 * spec.sigma_2 ** 2)).astype(np.complex128)
    else:
        spectral_values = np.exp(-(second - spec.omega0) ** 2 / (2 * spec.sigma_2 ** 2)).astype(np.complex128)
    spatial = ComplexField1D.new(axis=ax1, values=spatial_values).normalized()
    spectral = ComplexField1D.new(axis=ax2, values=spectral_values).normalized()
    return SeparableField.new(spatial=spatial, spectral=spectral)


@public
def apply_mask(field: SeparableField, mask: MaskSpec, inverted: bool = False) -> SeparableField:  # noqa FBT001 FBT002
    """
    Applies a binary mask to the factor of a field matching the mask's axis role. The transmitted field is not
    renormalized.

    :param field: The field.
    :param mask: The mask.
    :param inverted: If false, the field is zeroed inside [lo, hi]. If true, the field is zeroed outside it.
    :return: The masked field.
    """
    if mask.axis_role == MaskAxisRole.POSITION:
        factor = field.spatial
        required_unit = AxisUnit.POSITION_MM
    else:
        factor = field.spectral
        required_unit = AxisUnit.FREQUENCY_1E13_RAD_S
    if factor.axis.unit != required_unit:
        error_message = (f'A {mask.axis_role} mask needs a {required_unit} factor, but the matching factor has unit '
                         f'{factor.axis.unit}.')
        raise UnitMismatchError(error_message)
    coordinates = factor.axis.samples
    inside = (coordinates >= mask.lo) & (coordinates <= mask.hi)
    blocked = ~inside if inverted else inside
    masked_values = np.where(blocked, 0, factor.values)
    masked_factor = ComplexField1D(axis=factor.axis, values=masked_values)
    if mask.axis_role == MaskAxisRole.POSITION:
        return SeparableField(spatial=masked_factor, spectral=field.spectral)
    return SeparableField(spatial=field.spatial, spectral=masked_factor)


@public
def renormalize(field: SeparableField) -> SeparableField:
    """
    Rescales both factors of a field to unit norm.

    :param field: The field.
    :return: The unit-norm field.
    """
    return SeparableField(spatial=field.spatial.normalized(), spectral=field.spectral.normalized())
