"""
Uniformly sampled coordinate axes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from public import public
from typing_extensions import Self

from tomophase.internal.errors import AxisMismatchError, NonPositiveSpanError, TooFewSamplesError

try:
    from enum import StrEnum
except ImportError:
    from backports.strenum import StrEnum

RECIPROCITY_TOLERANCE = 1e-9


@public
class AxisUnit(StrEnum):
    """
    The coordinate and working unit of an axis.
    """
    POSITION_MM = 'position_mm'
    MOMENTUM_RAD_PER_MM = 'momentum_rad_per_mm'
    FREQUENCY_1E13_RAD_S = 'frequency_1e13_rad_s'
    TIME_1E_13_S = 'time_1e-13_s'

    @property
    def partner(self) -> AxisUnit:
        """
        The unit of the Fourier conjugate coordinate.
        """
        return _partner_units[self]

    @property
    def is_base(self) -> bool:
        """
        Whether the unit belongs to a base coordinate (position or frequency) rather than a conjugate one.
        """
        return self in (AxisUnit.POSITION_MM, AxisUnit.FREQUENCY_1E13_RAD_S)


_partner_units = {
    AxisUnit.POSITION_MM: AxisUnit.MOMENTUM_RAD_PER_MM,
    AxisUnit.MOMENTUM_RAD_PER_MM: AxisUnit.POSITION_MM,
    AxisUnit.FREQUENCY_1E13_RAD_S: AxisUnit.TIME_1E_13_S,
    AxisUnit.TIME_1E_13_S: AxisUnit.FREQUENCY_1E13_RAD_S,
}


@public
@dataclass(frozen=True)
class SampledAxis:
    """
    A uniformly sampled 1D coordinate grid.

    :ivar center: The center of the axis.
    :ivar span: The distance between the first and last samples.
    :ivar n: The number of samples.
    :ivar unit: The unit of the coordinate.
    """

    center: float
    span: float
    n: int
    unit: AxisUnit

    @classmethod
    def new(cls, *, center: float, span: float, n: int, unit: AxisUnit) -> Self:
        """
        Creates a new `SampledAxis`.

        :param center: The center of the axis.
        :param span: The distance between the first and last samples. Must be positive.
        :param n: The number of samples. Must be at least 2.
        :param unit: The unit of the coordinate.
        :return: The axis.
        """
        if not span > 0:
            error_message = f'An axis span must be positive, but {span} was given.'
            raise NonPositiveSpanError(error_message)
        if n < 2:  # noqa PLR2004
            error_message = f'An axis needs at least 2 samples, but {n} was given.'
            raise TooFewSamplesError(error_message)
        return cls(center=float(center), span=float(span), n=int(n), unit=AxisUnit(unit))

    @property
    def step(self) -> float:
        return self.span / (self.n - 1)

    @property
    def start(self) -> float:
        return self.center - self.span / 2

    @property
    def stop(self) -> float:
        return self.center + self.span / 2

    @property
    def samples(self) -> npt.NDArray[np.float64]:
        return self.start + np.arange(self.n) * self.step

    def contains(self, value: float) -> bool:
        """
        Checks whether a value lies within the closed range of the axis.

        :param value: The coordinate value.
        :return: Whether the value is within range.
        """
        half_step_slack = 1e-12 * self.step
        return self.start - half_step_slack <= value <= self.stop + half_step_slack

    def nearest_index(self, value: float) -> int:
        """
        Finds the index of the sample nearest to a value.

        :param value: The coordinate value.
        :return: The sample index.
        """
        index = int(np.rint((value - self.start) / self.step))
        return min(max(index, 0), self.n - 1)

    def matches(self, other: SampledAxis) -> bool:
        """
        Checks whether two axes sample the same coordinates.

        :param other: The other axis.
        :return: Whether the axes match.
        """
        return (self.n == other.n and self.unit == other.unit and
                math.isclose(self.start, other.start, rel_tol=1e-12, abs_tol=1e-12 * self.step) and
                math.isclose(self.step, other.step, rel_tol=1e-12))


@public
def make_axis(center: float, span: float, n: int, unit: AxisUnit) -> SampledAxis:
    """
    Creates a uniformly sampled axis.

    :param center: The center of the axis.
    :param span: The distance between the first and last samples.
    :param n: The number of samples.
    :param unit: The unit of the coordinate.
    :return: The axis.
    """
    return SampledAxis.new(center=center, span=span, n=n, unit=unit)


@public
def conjugate_axis(axis: SampledAxis) -> SampledAxis:
    """
    Creates the axis induced by the discrete Fourier transform of an axis. The conjugate axis has step
    2π/(nΔ), the same number of samples, is centered at zero, and carries the partner unit.

    :param axis: The axis to transform.
    :return: The conjugate axis.
    """
    conjugate_step = 2 * np.pi / (axis.n * axis.step)
    return SampledAxis.new(center=0.0, span=(axis.n - 1) * conjugate_step, n=axis.n, unit=axis.unit.partner)


@public
def refine_axis(axis: SampledAxis) -> SampledAxis:
    """
    Creates the 2× refined version of an axis. The refined axis starts at the same sample, has half the
    step, and twice the number of samples, so its final sample lies half a step beyond the original axis.

    :param axis: The axis to refine.
    :return: The refined axis.
    """
    refined_n = 2 * axis.n
    refined_span = (refined_n - 1) * axis.step / 2
    return SampledAxis.new(center=axis.start + refined_span / 2, span=refined_span, n=refined_n, unit=axis.unit)


def check_reciprocal(source: SampledAxis, target: SampledAxis) -> None:
    """
    Checks that two axes form a discrete Fourier pair, that is, they share a sample count and Δ·Δκ·n = 2π.

    :param source: The axis being transformed from.
    :param target: The axis being transformed to.
    """
    if source.n != target.n:
        error_message = (f'Fourier paired axes need matching sample counts, but {source.n} and {target.n} '
                         f'were given.')
        raise AxisMismatchError(error_message)
    reciprocity = source.step * target.step * source.n / (2 * np.pi)
    if abs(reciprocity - 1) > RECIPROCITY_TOLERANCE:
        error_message = (f'Axes with steps {source.step} and {target.step} are not reciprocal for '
                         f'{source.n} samples.')
        raise AxisMismatchError(error_message)


def check_axes_match(first: SampledAxis, second: SampledAxis, description: str) -> None:
    if not first.matches(second):
        error_message = f'The {description} axes do not match: {first} and {second}.'
        raise AxisMismatchError(error_message)
