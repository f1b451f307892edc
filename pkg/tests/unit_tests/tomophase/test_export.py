import numpy as np
import pandas as pd
import pytest

from tomophase.internal.distribution import Dist2D, DistributionKind
from tomophase.internal.errors import OutputError
from tomophase.internal.export import (
    Component,
    Palette,
    convert_column_name_to_display_name,
    export_heatmap,
    export_slice_csv,
    heatmap_gray_levels,
)
from tomophase.internal.sampled_axis import AxisUnit, make_axis
from tests.graymap_reader import read_graymap


@pytest.fixture()
def slice_():
    x_axis = make_axis(center=0.0, span=2.0, n=3, unit=AxisUnit.POSITION_MM)
    p_axis = make_axis(center=0.0, span=3.0, n=4, unit=AxisUnit.MOMENTUM_RAD_PER_MM)
    values = np.arange(12).reshape(3, 4) / 7 - 0.5 + 1j * np.arange(12).reshape(3, 4) / 3
    return Dist2D.new(axis1=x_axis, axis2=p_axis, values=values, kind=DistributionKind.KIRKWOOD)


def test_slice_csv_lists_the_first_axis_then_the_second(slice_, tmp_path):
    path = tmp_path / 'slice.csv'
    export_slice_csv(slice_, path)
    data_frame = pd.read_csv(path)
    assert list(data_frame.columns) == ['x__mm', 'p__rad_per_mm', 're', 'im']
    assert len(data_frame) == 12
    assert np.array_equal(data_frame['x__mm'].values[:4], [-1.0] * 4)
    assert np.allclose(data_frame['p__rad_per_mm'].values[:4], slice_.axis2.samples)
    assert np.array_equal(data_frame['re'].values, slice_.values.real.ravel())
    assert np.array_equal(data_frame['im'].values, slice_.values.imag.ravel())


def test_slice_csv_to_a_missing_directory_errors(slice_, tmp_path):
    with pytest.raises(OutputError):
        export_slice_csv(slice_, tmp_path / 'missing' / 'slice.csv')


def test_signed_palette_maps_zero_to_mid_gray():
    levels, scale = heatmap_gray_levels(np.array([[-2.0, 0.0, 2.0, 1.0]]), Palette.SIGNED)
    assert scale == 2.0
    assert levels.tolist() == [[0, 128, 255, 191]]


def test_magnitude_palette_maps_zero_to_black():
    levels, scale = heatmap_gray_levels(np.array([[-2.0, 0.0, 1.0]]), Palette.MAGNITUDE)
    assert scale == 2.0
    assert levels.tolist() == [[255, 0, 128]]


def test_all_zero_values_render_flat():
    levels, _ = heatmap_gray_levels(np.zeros((2, 2)), Palette.SIGNED)
    assert np.all(levels == 128)


def test_heatmap_puts_the_first_axis_left_to_right_and_the_second_bottom_to_top(slice_, tmp_path):
    path = tmp_path / 'slice.pgm'
    scale = export_heatmap(slice_, path, Palette.SIGNED, Component.IMAGINARY)
    image = read_graymap(path)
    assert image.shape == (4, 3)
    assert image[-1, 0] == 128
    assert image[0, -1] == 255
    assert scale.component == Component.IMAGINARY
    assert scale.maximum == pytest.approx(11 / 3)
    assert path.read_bytes().startswith(b'P5\n3 4\n255\n')


@pytest.mark.parametrize(
    ('column_name', 'expected_display_name'),
    [
        ('x__mm', 'X (mm)'),
        ('p__rad_per_mm', 'P (rad/mm)'),
        ('omega__1e13_rad_per_s', 'ω (10¹³ rad/s)'),
        ('t__1e-13_s', 'T (10⁻¹³ s)'),
        ('name_with__units', 'Name with (units)'),
    ],
)
def test_converting_column_name_to_display_name(column_name, expected_display_name):
    display_name = convert_column_name_to_display_name(column_name)
    assert display_name == expected_display_name
