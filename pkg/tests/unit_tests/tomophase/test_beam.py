import numpy as np
import pytest

from tomophase.internal.beam import (
    DEFAULT_CHIRP,
    GaussianBeamSpec,
    MaskAxisRole,
    MaskSpec,
    SecondDomain,
    apply_mask,
    build_beam,
    chirp_from_curvature,
    renormalize,
)
from tomophase.internal.errors import UnitMismatchError
from tomophase.internal.sampled_axis import AxisUnit, make_axis


@pytest.fixture()
def x_axis():
    return make_axis(center=0.0, span=8.0, n=256, unit=AxisUnit.POSITION_MM)


@pytest.fixture()
def t_axis():
    return make_axis(center=0.0, span=16.0, n=256, unit=AxisUnit.TIME_1E_13_S)


@pytest.fixture()
def w_axis():
    return make_axis(center=0.0, span=6.0, n=256, unit=AxisUnit.FREQUENCY_1E13_RAD_S)


def test_default_chirp_matches_an_800_nm_beam_with_a_10_m_curvature():
    assert np.isclose(DEFAULT_CHIRP, -np.pi / 8)
    assert np.isclose(chirp_from_curvature(800e-6, -10_000.0), DEFAULT_CHIRP)


def test_built_beam_has_unit_norm(x_axis, t_axis):
    beam = build_beam(GaussianBeamSpec.wire(), x_axis, t_axis)
    assert np.isclose(beam.norm, 1.0)
    assert np.isclose(beam.spatial.norm, 1.0)


def test_built_beam_carries_the_spatial_chirp(x_axis, t_axis):
    beam = build_beam(GaussianBeamSpec.new(chirp=0.5), x_axis, t_axis)
    x = x_axis.samples
    phases = np.angle(beam.spatial.values / np.abs(beam.spatial.values))
    assert np.allclose(np.exp(1j * phases), np.exp(0.5j * x ** 2))


def test_frequency_domain_beam_is_centered_on_omega0(x_axis, w_axis):
    spec = GaussianBeamSpec.new(sigma_2=0.5, omega0=1.0, second_domain=SecondDomain.FREQUENCY)
    beam = build_beam(spec, x_axis, w_axis)
    peak = w_axis.samples[np.argmax(np.abs(beam.spectral.values))]
    assert abs(peak - 1.0) <= w_axis.step


def test_beam_axes_must_match_the_second_domain(x_axis, t_axis, w_axis):
    with pytest.raises(UnitMismatchError):
        build_beam(GaussianBeamSpec.wire(), x_axis, w_axis)
    with pytest.raises(UnitMismatchError):
        build_beam(GaussianBeamSpec.absorption_filter(), x_axis, t_axis)
    with pytest.raises(UnitMismatchError):
        build_beam(GaussianBeamSpec.wire(), t_axis, t_axis)


def test_beam_widths_must_be_positive():
    with pytest.raises(ValueError, match='positive'):
        GaussianBeamSpec.new(sigma_x=0.0)


def test_wire_mask_blocks_the_center(x_axis, t_axis):
    beam = build_beam(GaussianBeamSpec.wire(), x_axis, t_axis)
    masked = apply_mask(beam, MaskSpec.wire())
    inside = np.abs(x_axis.samples) <= 0.3
    assert np.all(masked.spatial.values[inside] == 0)
    assert np.array_equal(masked.spatial.values[~inside], beam.spatial.values[~inside])
    assert masked.spectral is beam.spectral
    assert masked.norm < beam.norm


def test_inverted_mask_passes_only_the_band(x_axis, t_axis):
    beam = build_beam(GaussianBeamSpec.wire(), x_axis, t_axis)
    masked = apply_mask(beam, MaskSpec.wire(), inverted=True)
    inside = np.abs(x_axis.samples) <= 0.3
    assert np.all(masked.spatial.values[~inside] == 0)
    assert np.array_equal(masked.spatial.values[inside], beam.spatial.values[inside])


def test_frequency_mask_acts_on_the_spectral_factor(x_axis, w_axis):
    beam = build_beam(GaussianBeamSpec.absorption_filter(), x_axis, w_axis)
    masked = apply_mask(beam, MaskSpec.absorption_filter())
    inside = np.abs(w_axis.samples) <= 0.1
    assert np.any(inside)
    assert np.all(masked.spectral.values[inside] == 0)
    assert masked.spatial is beam.spatial


@pytest.mark.parametrize('inverted', [False, True])
def test_masking_twice_equals_masking_once(x_axis, w_axis, inverted):
    beam = build_beam(GaussianBeamSpec.absorption_filter(), x_axis, w_axis)
    for mask in (MaskSpec.wire(), MaskSpec.absorption_filter()):
        once = apply_mask(beam, mask, inverted=inverted)
        twice = apply_mask(once, mask, inverted=inverted)
        assert np.array_equal(twice.spatial.values, once.spatial.values)
        assert np.array_equal(twice.spectral.values, once.spectral.values)


def test_frequency_mask_on_a_time_domain_beam_errors(x_axis, t_axis):
    beam = build_beam(GaussianBeamSpec.wire(), x_axis, t_axis)
    with pytest.raises(UnitMismatchError):
        apply_mask(beam, MaskSpec.absorption_filter())


def test_mask_band_must_be_ordered():
    with pytest.raises(ValueError, match='lo < hi'):
        MaskSpec.new(lo=0.3, hi=-0.3, axis_role=MaskAxisRole.POSITION)


def test_renormalize_restores_unit_norm(x_axis, t_axis):
    masked = apply_mask(build_beam(GaussianBeamSpec.wire(), x_axis, t_axis), MaskSpec.wire())
    assert np.isclose(renormalize(masked).norm, 1.0)
