"""
Exporters for distribution slices: CSV tables and portable graymap heatmaps.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt
import pandas as pd
from public import public

from tomophase.internal.distribution import Dist2D
from tomophase.internal.errors import OutputError
from tomophase.internal.sampled_axis import AxisUnit, SampledAxis

try:
    from enum import StrEnum
except ImportError:
    from backports.strenum import StrEnum

if TYPE_CHECKING:
    from pathlib import Path

logger = logging.getLogger(__name__)

_column_names_by_unit = {
    AxisUnit.POSITION_MM: 'x__mm',
    AxisUnit.MOMENTUM_RAD_PER_MM: 'p__rad_per_mm',
    AxisUnit.FREQUENCY_1E13_RAD_S: 'omega__1e13_rad_per_s',
    AxisUnit.TIME_1E_13_S: 't__1e-13_s',
}
MAXIMUM_GRAY = 255
MIDDLE_GRAY = 127.5


@public
class Palette(StrEnum):
    """
    How heatmap values map to gray levels. The signed palette maps zero to mid-gray, the magnitude palette maps
    zero to black.
    """
    SIGNED = 'signed'
    MAGNITUDE = 'magnitude'


@public
class Component(StrEnum):
    REAL = 'real'
    IMAGINARY = 'imaginary'
    MODULUS = 'modulus'


@public
@dataclass(frozen=True)
class HeatmapScale:
    """
    The linear scaling used to render a heatmap.

    :ivar minimum: The smallest rendered value.
    :ivar maximum: The largest rendered value.
    :ivar scale: The value mapped to the palette extreme.
    :ivar palette: The palette.
    :ivar component: The rendered component of the complex values.
    """

    minimum: float
    maximum: float
    scale: float
    palette: Palette
    component: Component


def column_name_for_axis(axis: SampledAxis) -> str:
    """
    The CSV column name of an axis, in snake case with the units after a double underscore.

    :param axis: The axis.
    :return: The column name.
    """
    return _column_names_by_unit[axis.unit]


def convert_column_name_to_display_name(column_name: str) -> str:
    """
    Converts a column style name to a human-readable display name. Column style names are snake_case with a double
    underscore before the units. Example: `p__rad_per_mm` -> `P (rad/mm)`

    :param column_name: The column name.
    :return: The display name.
    """
    display_name = re.sub(r'__(.*)', r' (\g<1>)', column_name)  # Move units into parentheses.
    display_name = display_name.replace('_', ' ')
    display_name = display_name[0].upper() + display_name[1:]
    specific_replacements = {
        r'^Omega': 'ω',
        r'\(rad per mm\)': '(rad/mm)',
        r'\(1e13 rad per s\)': '(10¹³ rad/s)',
        r'\(1e-13 s\)': '(10⁻¹³ s)',
    }
    for pattern, replacement in specific_replacements.items():
        display_name = re.sub(pattern, replacement, display_name)
    return display_name


@public
def export_slice_csv(distribution: Dist2D, path: Path) -> None:
    """
    Writes a slice as CSV. The header names both axes with units, followed by the real and imaginary parts, and
    the rows run over the first axis, then the second. Values are written with 17 significant digits.

    :param distribution: The slice.
    :param path: The output path.
    """
    first_samples = distribution.axis1.samples
    second_samples = distribution.axis2.samples
    data_frame = pd.DataFrame({
        column_name_for_axis(distribution.axis1): np.repeat(first_samples, second_samples.shape[0]),
        column_name_for_axis(distribution.axis2): np.tile(second_samples, first_samples.shape[0]),
        're': distribution.values.real.ravel(),
        'im': distribution.values.imag.ravel(),
    })
    try:
        data_frame.to_csv(path, index=False, float_format='%.17g', lineterminator='\n')
    except OSError as error:
        error_message = f'Could not write the slice CSV to {path}: {error}'
        raise OutputError(error_message) from error
    logger.debug(f'Wrote {data_frame.shape[0]} rows to {path}.')


def _component_values(values: npt.NDArray[np.complex128], component: Component) -> npt.NDArray[np.float64]:
    if component == Component.IMAGINARY:
        return values.imag
    if component == Component.MODULUS:
        return np.abs(values)
    return values.real


def heatmap_gray_levels(values: npt.NDArray[np.float64], palette: Palette) -> tuple[npt.NDArray[np.uint8], float]:
    """
    Maps values to gray levels.

    :param values: The values.
    :param palette: The palette.
    :return: The gray levels and the value mapped to the palette extreme.
    """
    if palette == Palette.SIGNED:
        scale = float(np.max(np.abs(values)))
        if scale == 0:
            return np.full(values.shape, np.rint(MIDDLE_GRAY), dtype=np.uint8), scale
        levels = np.rint(MIDDLE_GRAY + MIDDLE_GRAY * values / scale)
    else:
        magnitudes = np.abs(values)
        scale = float(np.max(magnitudes))
        if scale == 0:
            return np.zeros(values.shape, dtype=np.uint8), scale
        levels = np.rint(MAXIMUM_GRAY * magnitudes / scale)
    return np.clip(levels, 0, MAXIMUM_GRAY).astype(np.uint8), scale


@public
def export_heatmap(distribution: Dist2D, path: Path, palette: Palette = Palette.SIGNED,
                   component: Component = Component.REAL) -> HeatmapScale:
    """
    Writes a slice as a binary portable graymap. The first axis runs left to right and the second axis bottom to
    top.

    :param distribution: The slice.
    :param path: The output path.
    :param palette: The palette.
    :param component: The component of the complex values to render.
    :return: The scaling used.
    """
    values = _component_values(distribution.values, component)
    levels, scale = heatmap_gray_levels(values, palette)
    image = levels.T[::-1]
    height, width = image.shape
    header = f'P5\n{width} {height}\n{MAXIMUM_GRAY}\n'.encode('ascii')
    try:
        path.write_bytes(header + np.ascontiguousarray(image).tobytes())
    except OSError as error:
        error_message = f'Could not write the heatmap to {path}: {error}'
        raise OutputError(error_message) from error
    return HeatmapScale(minimum=float(np.min(values)), maximum=float(np.max(values)), scale=scale,
                        palette=Palette(palette), component=Component(component))
