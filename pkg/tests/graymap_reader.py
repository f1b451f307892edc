"""
Reading back the binary graymaps written by heatmap export.
"""
from pathlib import Path

import numpy as np
import numpy.typing as npt

MAXIMUM_GRAY = 255


def read_graymap(path: Path) -> npt.NDArray[np.uint8]:
    """
    Reads an 8-bit binary portable graymap.

    :param path: The path.
    :return: The gray levels, shaped (height, width).
    """
    magic, dimensions, maximum, pixels = path.read_bytes().split(b'\n', 3)
    assert magic == b'P5'
    assert int(maximum) == MAXIMUM_GRAY
    width, height = (int(token) for token in dimensions.split())
    return np.frombuffer(pixels, dtype=np.uint8).reshape(height, width)
