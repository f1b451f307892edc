"""
Phase-space distribution containers, slicing, and marginals.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt
from public import public
from typing_extensions import Self

from tomophase.internal.errors import BudgetExceededError, NotWignerError, OutOfRangeError
from tomophase.internal.sampled_axis import SampledAxis

try:
    from enum import StrEnum
except ImportError:
    from backports.strenum import StrEnum

logger = logging.getLogger(__name__)

BYTES_PER_MEGABYTE = 1024 ** 2
DEFAULT_MEMORY_BUDGET_BYTES = 512 * BYTES_PER_MEGABYTE
COMPLEX_ITEM_BYTES = np.dtype(np.complex128).itemsize


@public
class DistributionKind(StrEnum):
    WIGNER = 'wigner'
    KIRKWOOD = 'kirkwood'


@public
class CombineRule(StrEnum):
    """
    How the two factors of a separable distribution combine into the 4D value.
    """
    PRODUCT = 'product'
    REAL_PART_OF_PRODUCT = 'real_part_of_product'


@public
class KirkwoodOrientation(StrEnum):
    """
    Which coordinate of the (ω, t) pair a Kirkwood-Rihaczek distribution uses as its base. The frequency base
    form is E*(x,ω)·Ẽ(p,t)·e^{i(xp+ωt)}. The time base form, produced by the heterodyne measurement, is
    E*(x,t)·Ê(p,ω)·e^{i(xp-ωt)}.
    """
    FREQUENCY_BASE = 'frequency_base'
    TIME_BASE = 'time_base'


@public
class Coordinate(StrEnum):
    X = 'x'
    P = 'p'
    OMEGA = 'omega'
    T = 't'


COORDINATE_ORDER = (Coordinate.X, Coordinate.P, Coordinate.OMEGA, Coordinate.T)


def check_dense_budget(shape: tuple[int, ...], memory_budget_bytes: int, description: str) -> None:
    """
    Checks that a dense complex array of a shape fits a memory budget.

    :param shape: The array shape.
    :param memory_budget_bytes: The budget in bytes.
    :param description: A description of the array for the error message.
    """
    required_bytes = int(np.prod(shape, dtype=np.float64)) * COMPLEX_ITEM_BYTES
    if required_bytes > memory_budget_bytes:
        error_message = (f'The dense {description} of shape {shape} needs {required_bytes / BYTES_PER_MEGABYTE:.1f} '
                         f'MB, exceeding the budget of {memory_budget_bytes / BYTES_PER_MEGABYTE:.1f} MB.')
        raise BudgetExceededError(error_message)


@public
@dataclass
class Dist2D:
    """
    A distribution over a pair of coordinates.

    :ivar axis1: The first axis.
    :ivar axis2: The second axis.
    :ivar values: The complex values, shaped (axis1.n, axis2.n).
    :ivar kind: The kind of distribution.
    :ivar snap_distances: For slices, the distance each fixed coordinate was moved to reach a grid point.
    """

    axis1: SampledAxis
    axis2: SampledAxis
    values: npt.NDArray[np.complex128]
    kind: DistributionKind
    snap_distances: dict[str, float] = field(default_factory=dict)

    @classmethod
    def new(cls, *, axis1: SampledAxis, axis2: SampledAxis, values: npt.ArrayLike, kind: DistributionKind,
            snap_distances: dict[str, float] | None = None) -> Self:
        values = np.array(values, dtype=np.complex128)
        if values.shape != (axis1.n, axis2.n):
            error_message = f'Distribution values have shape {values.shape}, expected {(axis1.n, axis2.n)}.'
            raise ValueError(error_message)
        if snap_distances is None:
            snap_distances = {}
        return cls(axis1=axis1, axis2=axis2, values=values, kind=DistributionKind(kind),
                   snap_distances=snap_distances)

    @property
    def area_element(self) -> float:
        return self.axis1.step * self.axis2.step

    def realness_residual(self) -> float:
        """
        The ratio of the largest imaginary magnitude to the largest real magnitude.
        """
        maximum_real = float(np.max(np.abs(self.values.real)))
        maximum_imaginary = float(np.max(np.abs(self.values.imag)))
        if maximum_real == 0:
            return 0.0 if maximum_imaginary == 0 else float('inf')
        return maximum_imaginary / maximum_real


def _combine(first: npt.NDArray, second: npt.NDArray, rule: CombineRule) -> npt.NDArray:
    combined = np.multiply.outer(first, second)
    if rule == CombineRule.REAL_PART_OF_PRODUCT:
        return combined.real.astype(np.complex128)
    return combined


@public
@dataclass
class Dist4D:
    """
    A distribution over (x, p, ω, t), stored either as two factor distributions over (x, p) and (ω, t) or as a
    dense array.

    :ivar kind: The kind of distribution.
    :ivar factor_xp: The (x, p) factor for separable distributions.
    :ivar factor_wt: The (ω, t) factor for separable distributions.
    :ivar combine_rule: How the factors combine for separable distributions.
    :ivar dense_axes: The (x, p, ω, t) axes for dense distributions.
    :ivar values: The values, shaped (x, p, ω, t), for dense distributions.
    :ivar orientation: The (ω, t) orientation of Kirkwood-Rihaczek distributions.
    """

    kind: DistributionKind
    factor_xp: Dist2D | None = None
    factor_wt: Dist2D | None = None
    combine_rule: CombineRule = CombineRule.PRODUCT
    dense_axes: tuple[SampledAxis, SampledAxis, SampledAxis, SampledAxis] | None = None
    values: npt.NDArray[np.complex128] | None = None
    orientation: KirkwoodOrientation = KirkwoodOrientation.FREQUENCY_BASE

    @classmethod
    def new_separable(cls, *, factor_xp: Dist2D, factor_wt: Dist2D, kind: DistributionKind,
                      combine_rule: CombineRule = CombineRule.PRODUCT,
                      orientation: KirkwoodOrientation = KirkwoodOrientation.FREQUENCY_BASE) -> Self:
        """
        Creates a separable distribution.

        :param factor_xp: The (x, p) factor.
        :param factor_wt: The (ω, t) factor.
        :param kind: The kind of distribution.
        :param combine_rule: How the factors combine.
        :param orientation: The (ω, t) orientation of Kirkwood-Rihaczek distributions.
        :return: The distribution.
        """
        return cls(kind=DistributionKind(kind), factor_xp=factor_xp, factor_wt=factor_wt,
                   combine_rule=CombineRule(combine_rule), orientation=KirkwoodOrientation(orientation))

    @classmethod
    def new_dense(cls, *, axes: tuple[SampledAxis, SampledAxis, SampledAxis, SampledAxis], values: npt.ArrayLike,
                  kind: DistributionKind,
                  orientation: KirkwoodOrientation = KirkwoodOrientation.FREQUENCY_BASE) -> Self:
        """
        Creates a dense distribution.

        :param axes: The (x, p, ω, t) axes.
        :param values: The values, shaped to match the axes.
        :param kind: The kind of distribution.
        :param orientation: The (ω, t) orientation of Kirkwood-Rihaczek distributions.
        :return: The distribution.
        """
        values = np.asarray(values, dtype=np.complex128)
        expected_shape = tuple(axis.n for axis in axes)
        if values.shape != expected_shape:
            error_message = f'Distribution values have shape {values.shape}, expected {expected_shape}.'
            raise ValueError(error_message)
        return cls(kind=DistributionKind(kind), dense_axes=tuple(axes), values=values,
                   orientation=KirkwoodOrientation(orientation))

    @property
    def is_separable(self) -> bool:
        return self.values is None

    @property
    def axes(self) -> tuple[SampledAxis, SampledAxis, SampledAxis, SampledAxis]:
        """
        The (x, p, ω, t) axes.
        """
        if self.is_separable:
            return self.factor_xp.axis1, self.factor_xp.axis2, self.factor_wt.axis1, self.factor_wt.axis2
        return self.dense_axes

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return tuple(axis.n for axis in self.axes)

    @property
    def volume_element(self) -> float:
        return float(np.prod([axis.step for axis in self.axes]))

    def axis_for(self, coordinate: Coordinate) -> SampledAxis:
        return self.axes[COORDINATE_ORDER.index(Coordinate(coordinate))]

    def dense_values(self, memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET_BYTES) -> npt.NDArray[np.complex128]:
        """
        Evaluates the distribution as a dense (x, p, ω, t) array.

        :param memory_budget_bytes: The memory budget for the dense array.
        :return: The dense values.
        """
        if not self.is_separable:
            return self.values
        check_dense_budget(self.shape, memory_budget_bytes, f'{self.kind} distribution')
        return _combine(self.factor_xp.values, self.factor_wt.values, self.combine_rule)

    def value_at(self, x: float, p: float, omega: float, t: float) -> complex:
        """
        Looks up the value at the grid point nearest to a coordinate.

        :return: The value.
        """
        indexes = [axis.nearest_index(value) for axis, value in zip(self.axes, (x, p, omega, t))]
        if not self.is_separable:
            return complex(self.values[tuple(indexes)])
        product = self.factor_xp.values[indexes[0], indexes[1]] * self.factor_wt.values[indexes[2], indexes[3]]
        if self.combine_rule == CombineRule.REAL_PART_OF_PRODUCT:
            return complex(product.real)
        return complex(product)


@public
@dataclass(frozen=True)
class SliceSpec:
    """
    A 2D section of a 4D distribution.

    :ivar fixed: The two fixed coordinates and their values.
    """

    fixed: tuple[tuple[Coordinate, float], tuple[Coordinate, float]]

    @classmethod
    def new(cls, **fixed: float) -> Self:
        """
        Creates a new `SliceSpec` from two fixed coordinates given as keywords, e.g. `SliceSpec.new(omega=0, t=0)`.

        :return: The slice specification.
        """
        if len(fixed) != 2:  # noqa PLR2004
            error_message = f'A slice fixes exactly two coordinates, but {sorted(fixed)} were given.'
            raise ValueError(error_message)
        coordinates = []
        for name, value in fixed.items():
            try:
                coordinate = Coordinate(name)
            except ValueError as error:
                error_message = f'Unknown slice coordinate {name!r}. Expected one of x, p, omega, t.'
                raise ValueError(error_message) from error
            coordinates.append((coordinate, float(value)))
        coordinates.sort(key=lambda pair: COORDINATE_ORDER.index(pair[0]))
        return cls(fixed=tuple(coordinates))

    @property
    def fixed_coordinates(self) -> tuple[Coordinate, Coordinate]:
        return tuple(coordinate for coordinate, _ in self.fixed)

    @property
    def free(self) -> tuple[Coordinate, Coordinate]:
        """
        The two free coordinates, in (x, p, ω, t) order.
        """
        fixed_coordinates = self.fixed_coordinates
        return tuple(coordinate for coordinate in COORDINATE_ORDER if coordinate not in fixed_coordinates)


@public
def slice_distribution(distribution: Dist4D, slice_spec: SliceSpec) -> Dist2D:
    """
    Extracts a 2D section of a 4D distribution. Fixed coordinates snap to the nearest grid point.

    :param distribution: The distribution.
    :param slice_spec: The slice specification.
    :return: The section over the free coordinates, with the snap distances recorded.
    """
    indexes: dict[Coordinate, int] = {}
    snap_distances: dict[str, float] = {}
    for coordinate, value in slice_spec.fixed:
        axis = distribution.axis_for(coordinate)
        if not axis.contains(value):
            error_message = f'Slice coordinate {coordinate}={value} is outside [{axis.start}, {axis.stop}].'
            raise OutOfRangeError(error_message)
        index = axis.nearest_index(value)
        indexes[coordinate] = index
        snap_distances[str(coordinate)] = float(abs(axis.samples[index] - value))
    free_first, free_second = slice_spec.free
    if distribution.is_separable:
        values = _separable_slice(distribution, indexes)
    else:
        selection = tuple(indexes.get(coordinate, slice(None)) for coordinate in COORDINATE_ORDER)
        values = distribution.values[selection]
    return Dist2D(axis1=distribution.axis_for(free_first), axis2=distribution.axis_for(free_second),
                  values=np.array(values, dtype=np.complex128), kind=distribution.kind,
                  snap_distances=snap_distances)


def _separable_slice(distribution: Dist4D, indexes: dict[Coordinate, int]) -> npt.NDArray[np.complex128]:
    xp_selection = (indexes.get(Coordinate.X, slice(None)), indexes.get(Coordinate.P, slice(None)))
    wt_selection = (indexes.get(Coordinate.OMEGA, slice(None)), indexes.get(Coordinate.T, slice(None)))
    xp_part = distribution.factor_xp.values[xp_selection]
    wt_part = distribution.factor_wt.values[wt_selection]
    return _combine(xp_part, wt_part, distribution.combine_rule)


@public
def marginal(distribution: Dist4D,
             over: set[Coordinate] | frozenset[Coordinate]) -> Dist2D | npt.NDArray[np.float64] | float:
    """
    Integrates a Wigner distribution over a set of coordinates by Riemann sums. Separable distributions are
    integrated factor by factor.

    :param distribution: The Wigner distribution.
    :param over: The coordinates to integrate over, two to four of x, p, omega and t.
    :return: A `Dist2D` over the remaining pair, a 1D profile over the remaining coordinate, or the total.
    """
    if distribution.kind != DistributionKind.WIGNER:
        error_message = f'Marginals are defined for Wigner distributions, but a {distribution.kind} was given.'
        raise NotWignerError(error_message)
    over = {Coordinate(coordinate) for coordinate in over}
    if len(over) < 2:  # noqa PLR2004
        error_message = f'A marginal integrates over at least two coordinates, but {sorted(over)} were given.'
        raise ValueError(error_message)
    integrated = _integrate(distribution, over)
    remaining = [coordinate for coordinate in COORDINATE_ORDER if coordinate not in over]
    if len(remaining) == 2:  # noqa PLR2004
        return Dist2D(axis1=distribution.axis_for(remaining[0]), axis2=distribution.axis_for(remaining[1]),
                      values=integrated.astype(np.complex128), kind=DistributionKind.WIGNER)
    if len(remaining) == 1:
        return integrated.real
    return float(integrated.real)


def _integrate(distribution: Dist4D, over: set[Coordinate]) -> npt.NDArray:
    array_axes = tuple(COORDINATE_ORDER.index(coordinate) for coordinate in over)
    if not distribution.is_separable:
        element = float(np.prod([distribution.axis_for(coordinate).step for coordinate in over]))
        return np.sum(distribution.values, axis=array_axes) * element
    xp_axes = tuple(axis for axis in array_axes if axis < 2)  # noqa PLR2004
    wt_axes = tuple(axis - 2 for axis in array_axes if axis >= 2)  # noqa PLR2004
    xp_element = float(np.prod([distribution.axes[axis].step for axis in xp_axes]))
    wt_element = float(np.prod([distribution.axes[axis + 2].step for axis in wt_axes]))
    xp_reduced = np.sum(distribution.factor_xp.values, axis=xp_axes) * xp_element
    wt_reduced = np.sum(distribution.factor_wt.values, axis=wt_axes) * wt_element
    return _combine(xp_reduced, wt_reduced, distribution.combine_rule)
