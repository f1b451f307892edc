"""
Sampled complex wave fields.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from public import public
from typing_extensions import Self

from tomophase.internal.errors import InconsistentUnitsError
from tomophase.internal.sampled_axis import AxisUnit, SampledAxis, check_axes_match

try:
    from enum import StrEnum
except ImportError:
    from backports.strenum import StrEnum


@public
class FieldDomain(StrEnum):
    """
    The pair of coordinates a 2D field is sampled over.
    """
    X_T = 'x_t'
    X_OMEGA = 'x_omega'
    P_T = 'p_t'
    P_OMEGA = 'p_omega'

    @classmethod
    def from_units(cls, unit1: AxisUnit, unit2: AxisUnit) -> FieldDomain:
        """
        Derives the domain from the units of a spatial and a spectral axis.

        :param unit1: The unit of the spatial axis.
        :param unit2: The unit of the spectral axis.
        :return: The domain.
        """
        domain = _domains_by_units.get((unit1, unit2))
        if domain is None:
            error_message = (f'Units {unit1} and {unit2} do not form a field domain. The first axis must be position '
                             f'or momentum and the second frequency or time.')
            raise InconsistentUnitsError(error_message)
        return domain


_domains_by_units = {
    (AxisUnit.POSITION_MM, AxisUnit.TIME_1E_13_S): FieldDomain.X_T,
    (AxisUnit.POSITION_MM, AxisUnit.FREQUENCY_1E13_RAD_S): FieldDomain.X_OMEGA,
    (AxisUnit.MOMENTUM_RAD_PER_MM, AxisUnit.TIME_1E_13_S): FieldDomain.P_T,
    (AxisUnit.MOMENTUM_RAD_PER_MM, AxisUnit.FREQUENCY_1E13_RAD_S): FieldDomain.P_OMEGA,
}


def _validated_values(values: npt.ArrayLike, shape: tuple[int, ...]) -> npt.NDArray[np.complex128]:
    values = np.array(values, dtype=np.complex128)
    if values.shape != shape:
        error_message = f'Field values have shape {values.shape}, but the axes require {shape}.'
        raise ValueError(error_message)
    if not np.all(np.isfinite(values)):
        error_message = 'Field values must all be finite.'
        raise ValueError(error_message)
    return values


@public
@dataclass
class ComplexField1D:
    """
    Complex samples of a field over one axis.

    :ivar axis: The axis the field is sampled on.
    :ivar values: The complex samples.
    """

    axis: SampledAxis
    values: npt.NDArray[np.complex128]

    @classmethod
    def new(cls, *, axis: SampledAxis, values: npt.ArrayLike) -> Self:
        """
        Creates a new `ComplexField1D`.

        :param axis: The axis the field is sampled on.
        :param values: The samples. Must have length `axis.n` and be finite.
        :return: The field.
        """
        return cls(axis=axis, values=_validated_values(values, (axis.n,)))

    @property
    def norm(self) -> float:
        """
        The continuum L2 norm of the field.
        """
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.axis.step))

    def normalized(self) -> ComplexField1D:
        """
        Scales the field to unit norm. An all-zero field is returned unchanged.

        :return: The normalized field.
        """
        norm = self.norm
        if norm == 0:
            return ComplexField1D(axis=self.axis, values=self.values.copy())
        return ComplexField1D(axis=self.axis, values=self.values / norm)


@public
@dataclass
class ComplexField2D:
    """
    Complex samples of a field over a spatial and a spectral axis.

    :ivar axis1: The spatial axis (position or momentum).
    :ivar axis2: The spectral axis (frequency or time).
    :ivar values: The complex samples, shaped (axis1.n, axis2.n).
    :ivar domain: The coordinate pair the field is sampled over.
    """

    axis1: SampledAxis
    axis2: SampledAxis
    values: npt.NDArray[np.complex128]
    domain: FieldDomain

    @classmethod
    def new(cls, *, axis1: SampledAxis, axis2: SampledAxis, values: npt.ArrayLike) -> Self:
        """
        Creates a new `ComplexField2D` with the domain derived from the axis units.

        :param axis1: The spatial axis.
        :param axis2: The spectral axis.
        :param values: The samples. Must be shaped (axis1.n, axis2.n) and be finite.
        :return: The field.
        """
        domain = FieldDomain.from_units(axis1.unit, axis2.unit)
        return cls(axis1=axis1, axis2=axis2, values=_validated_values(values, (axis1.n, axis2.n)), domain=domain)

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.axis1.step * self.axis2.step))


@public
@dataclass
class SeparableField:
    """
    A 2D field represented as the outer product of a spatial and a spectral factor.

    :ivar spatial: The spatial factor, on a position or momentum axis.
    :ivar spectral: The spectral factor, on a frequency or time axis.
    """

    spatial: ComplexField1D
    spectral: ComplexField1D

    @classmethod
    def new(cls, *, spatial: ComplexField1D, spectral: ComplexField1D) -> Self:
        """
        Creates a new `SeparableField`.

        :param spatial: The spatial factor.
        :param spectral: The spectral factor.
        :return: The field.
        """
        FieldDomain.from_units(spatial.axis.unit, spectral.axis.unit)
        return cls(spatial=spatial, spectral=spectral)

    @property
    def domain(self) -> FieldDomain:
        return FieldDomain.from_units(self.spatial.axis.unit, self.spectral.axis.unit)

    @property
    def norm(self) -> float:
        return self.spatial.norm * self.spectral.norm


@public
def densify(field: SeparableField) -> ComplexField2D:
    """
    Evaluates a separable field as a dense 2D field.

    :param field: The separable field.
    :return: The outer product of the factors.
    """
    domain = FieldDomain.from_units(field.spatial.axis.unit, field.spectral.axis.unit)
    values = np.multiply.outer(field.spatial.values, field.spectral.values)
    return ComplexField2D(axis1=field.spatial.axis, axis2=field.spectral.axis, values=values, domain=domain)


@public
def inner_product(first: ComplexField2D, second: ComplexField2D) -> complex:
    """
    Computes the continuum inner product ∫∫ conj(first)·second by a Riemann sum.

    :param first: The conjugated field.
    :param second: The other field.
    :return: The inner product.
    """
    check_axes_match(first.axis1, second.axis1, 'first')
    check_axes_match(first.axis2, second.axis2, 'second')
    summed = np.vdot(first.values, second.values)
    return complex(summed * first.axis1.step * first.axis2.step)
