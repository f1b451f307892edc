"""
Code for rendering distribution slices as figure panels.
"""
from __future__ import annotations

from typing import TYPE_CHECKING

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import TwoSlopeNorm

from tomophase.internal.export import column_name_for_axis, convert_column_name_to_display_name

if TYPE_CHECKING:
    from pathlib import Path

    from tomophase.internal.distribution import Dist2D


def plot_slice(distribution: Dist2D, save_path: Path, title: str | None = None, *, imaginary: bool = False):
    """
    Plots a slice as a heatmap with a diverging color map centered at zero.

    :param distribution: The slice.
    :param save_path: The path to save the plot image file to.
    :param title: The title to add to the plot.
    :param imaginary: Whether to plot the imaginary part instead of the real part.
    """
    values = distribution.values.imag if imaginary else distribution.values.real
    limit = float(np.max(np.abs(values)))
    if limit == 0:
        limit = 1.0
    first_samples = distribution.axis1.samples
    second_samples = distribution.axis2.samples
    extent = (first_samples[0], first_samples[-1], second_samples[0], second_samples[-1])
    figure, axes = plt.subplots(figsize=(6, 5))
    image = axes.imshow(values.T, origin='lower', extent=extent, aspect='auto', cmap='RdBu_r',
                        norm=TwoSlopeNorm(vcenter=0, vmin=-limit, vmax=limit), interpolation='nearest')
    axes.set_xlabel(convert_column_name_to_display_name(column_name_for_axis(distribution.axis1)))
    axes.set_ylabel(convert_column_name_to_display_name(column_name_for_axis(distribution.axis2)))
    if title is not None:
        axes.set_title(title)
    figure.colorbar(image, ax=axes)
    figure.savefig(save_path, dpi=100)
    plt.close(figure)
