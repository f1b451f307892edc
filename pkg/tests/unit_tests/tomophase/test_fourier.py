import warnings

import numpy as np
import pytest

from tomophase.internal.complex_field import ComplexField1D
from tomophase.internal.errors import AliasingRisk
from tomophase.internal.fourier import (
    check_aliasing_risk,
    continuum_dft,
    fourier_1d,
    refine_field,
    refine_values,
    shift_field,
    to_base_domain,
    translate_values,
    translation_axis,
)
from tomophase.internal.sampled_axis import AxisUnit, conjugate_axis, make_axis


@pytest.fixture()
def x_axis():
    return make_axis(center=0.0, span=20.0, n=128, unit=AxisUnit.POSITION_MM)


def test_gaussian_transforms_to_gaussian(x_axis):
    field = ComplexField1D.new(axis=x_axis, values=np.exp(-x_axis.samples ** 2 / 2))
    transformed = fourier_1d(field, sign=-1)
    assert transformed.axis.unit == AxisUnit.MOMENTUM_RAD_PER_MM
    assert np.allclose(transformed.values, np.exp(-transformed.axis.samples ** 2 / 2), atol=1e-10)


@pytest.mark.parametrize(("sign", "expected_peak"), [(-1, 2.0), (1, -2.0)])
def test_transform_sign_sets_the_side_of_the_spectral_peak(x_axis, sign, expected_peak):
    field = ComplexField1D.new(axis=x_axis, values=np.exp(-x_axis.samples ** 2 / 2) * np.exp(2j * x_axis.samples))
    transformed = fourier_1d(field, sign=sign)
    peak = transformed.axis.samples[np.argmax(np.abs(transformed.values))]
    assert abs(peak - expected_peak) <= transformed.axis.step / 2


def test_transform_preserves_the_continuum_norm():
    axis = make_axis(center=1.3, span=12.0, n=97, unit=AxisUnit.FREQUENCY_1E13_RAD_S)
    rng = np.random.default_rng(0)
    values = rng.normal(size=97) + 1j * rng.normal(size=97)
    field = ComplexField1D.new(axis=axis, values=values)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', AliasingRisk)
        transformed = fourier_1d(field, sign=-1)
    assert np.isclose(transformed.norm, field.norm, rtol=1e-12)


def test_opposite_sign_transform_inverts_the_transform():
    axis = make_axis(center=0.7, span=12.0, n=64, unit=AxisUnit.POSITION_MM)
    rng = np.random.default_rng(1)
    values = rng.normal(size=64) + 1j * rng.normal(size=64)
    conjugate = conjugate_axis(axis)
    transformed = continuum_dft(values, axis, conjugate, -1)
    restored = continuum_dft(transformed, conjugate, axis, 1)
    assert np.allclose(restored, values, atol=1e-12)


def test_transform_along_an_inner_array_axis(x_axis):
    gaussian = np.exp(-x_axis.samples ** 2 / 2)
    stacked = np.stack([gaussian, 2 * gaussian], axis=1)
    transformed = continuum_dft(stacked, x_axis, conjugate_axis(x_axis), -1, array_axis=0)
    expected = continuum_dft(gaussian, x_axis, conjugate_axis(x_axis), -1)
    assert transformed.shape == (128, 2)
    assert np.allclose(transformed[:, 0], expected)
    assert np.allclose(transformed[:, 1], 2 * expected)


def test_invalid_sign_errors(x_axis):
    with pytest.raises(ValueError, match='sign'):
        continuum_dft(np.zeros(128), x_axis, conjugate_axis(x_axis), 2)


def test_translation_moves_a_gaussian(x_axis):
    gaussian = np.exp(-x_axis.samples ** 2 / 2)
    translated = translate_values(gaussian, x_axis, 0.5)
    assert np.allclose(translated, np.exp(-(x_axis.samples - 0.5) ** 2 / 2), atol=1e-10)


def test_translation_by_an_array_of_shifts_adds_a_leading_dimension(x_axis):
    gaussian = np.exp(-x_axis.samples ** 2 / 2)
    translated = translate_values(gaussian, x_axis, np.array([0.0, -1.0, 0.25]))
    assert translated.shape == (3, 128)
    assert np.allclose(translated[0], gaussian, atol=1e-10)
    assert np.allclose(translated[1], np.exp(-(x_axis.samples + 1.0) ** 2 / 2), atol=1e-10)


@pytest.mark.parametrize('points', [64, 65])
def test_translation_axis_samples_zero_frequency(points):
    axis = make_axis(center=0.0, span=8.0, n=points, unit=AxisUnit.POSITION_MM)
    dual_axis = translation_axis(axis)
    assert np.isclose(dual_axis.step, conjugate_axis(axis).step)
    assert np.isclose(np.min(np.abs(dual_axis.samples)), 0.0, atol=1e-12)


def test_whole_step_translation_is_a_cyclic_roll(x_axis):
    random_generator = np.random.default_rng(0)
    values = random_generator.normal(size=128) + 1j * random_generator.normal(size=128)
    translated = translate_values(values, x_axis, 5 * x_axis.step)
    assert np.allclose(translated, np.roll(values, 5), atol=1e-10)


def test_translation_keeps_a_constant_constant(x_axis):
    translated = translate_values(np.ones(128), x_axis, 0.37 * x_axis.step)
    assert np.allclose(translated, 1.0, atol=1e-10)


def test_shift_field(x_axis):
    field = ComplexField1D.new(axis=x_axis, values=np.exp(-x_axis.samples ** 2 / 2))
    shifted = shift_field(field, -0.3)
    assert np.allclose(shifted.values, np.exp(-(x_axis.samples + 0.3) ** 2 / 2), atol=1e-10)


def test_refinement_interpolates_midpoints(x_axis):
    gaussian = np.exp(-x_axis.samples ** 2 / 2)
    refined = refine_values(gaussian, x_axis)
    midpoints = x_axis.samples + x_axis.step / 2
    assert refined.shape == (256,)
    assert np.array_equal(refined[0::2], gaussian.astype(np.complex128))
    assert np.allclose(refined[1::2], np.exp(-midpoints ** 2 / 2), atol=1e-10)


def test_refine_field_uses_the_refined_axis(x_axis):
    field = ComplexField1D.new(axis=x_axis, values=np.exp(-x_axis.samples ** 2 / 2))
    refined = refine_field(field)
    assert refined.axis.n == 256
    assert np.allclose(refined.values, np.exp(-refined.axis.samples ** 2 / 2), atol=1e-10)


def test_aliasing_risk_is_warned_for_energy_at_the_edges(x_axis):
    with pytest.warns(AliasingRisk):
        assert check_aliasing_risk(np.ones(128), 'flat field')
    with warnings.catch_warnings():
        warnings.simplefilter('error')
        assert not check_aliasing_risk(np.exp(-x_axis.samples ** 2 / 2), 'gaussian field')
        assert not check_aliasing_risk(np.zeros(128), 'zero field')


def test_to_base_domain_inverts_a_time_field():
    w_axis = make_axis(center=0.0, span=16.0, n=128, unit=AxisUnit.FREQUENCY_1E13_RAD_S)
    spectrum = np.exp(-(w_axis.samples - 1.0) ** 2 / 2)
    t_axis = conjugate_axis(w_axis)
    time_field = ComplexField1D.new(axis=t_axis, values=continuum_dft(spectrum, w_axis, t_axis, -1))
    base_field = to_base_domain(time_field)
    assert base_field.axis.unit == AxisUnit.FREQUENCY_1E13_RAD_S
    assert np.allclose(base_field.values, spectrum, atol=1e-10)


def test_to_base_domain_leaves_a_position_field_unchanged(x_axis):
    field = ComplexField1D.new(axis=x_axis, values=np.exp(-x_axis.samples ** 2 / 2))
    assert to_base_domain(field) is field
