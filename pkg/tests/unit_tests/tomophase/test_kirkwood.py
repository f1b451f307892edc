import numpy as np
import pytest

from tomophase.internal.beam import GaussianBeamSpec, MaskSpec, apply_mask, build_beam
from tomophase.internal.complex_field import ComplexField1D, densify
from tomophase.internal.distribution import CombineRule, Dist2D, Dist4D, DistributionKind, KirkwoodOrientation
from tomophase.internal.errors import NotKirkwoodError
from tomophase.internal.fourier import continuum_dft
from tomophase.internal.kirkwood import invert_k_to_w, kirkwood_1d, kirkwood_4d
from tomophase.internal.run_configuration import GridConfiguration
from tomophase.internal.sampled_axis import AxisUnit, conjugate_axis, make_axis
from tomophase.internal.wigner import wigner_4d


@pytest.fixture()
def field_1d():
    axis = make_axis(center=0.0, span=16.0, n=97, unit=AxisUnit.POSITION_MM)
    samples = axis.samples
    values = np.exp(-(samples - 0.5) ** 2 / 2 + 0.3j * samples ** 2 - 1j * samples)
    return ComplexField1D.new(axis=axis, values=values).normalized()


def test_kirkwood_marginals_match_the_intensities(field_1d):
    distribution = kirkwood_1d(field_1d)
    assert distribution.kind == DistributionKind.KIRKWOOD
    assert distribution.axis1.matches(field_1d.axis)
    base_marginal = np.sum(distribution.values, axis=1) * distribution.axis2.step
    conjugate_marginal = np.sum(distribution.values, axis=0) * distribution.axis1.step
    spectrum = continuum_dft(field_1d.values, field_1d.axis, conjugate_axis(field_1d.axis), -1)
    assert np.allclose(base_marginal, np.abs(field_1d.values) ** 2, atol=1e-12)
    assert np.allclose(conjugate_marginal, np.abs(spectrum) ** 2, atol=1e-12)


def test_kirkwood_distribution_of_a_chirped_field_is_complex(field_1d):
    distribution = kirkwood_1d(field_1d)
    assert np.max(np.abs(distribution.values.imag)) > 1e-3
    assert np.isclose(np.sum(distribution.values) * distribution.area_element, 1.0)


def test_dense_kirkwood_of_a_separable_field_matches_the_factor_product():
    x_axis = make_axis(center=0.0, span=8.0, n=12, unit=AxisUnit.POSITION_MM)
    t_axis = make_axis(center=0.0, span=16.0, n=12, unit=AxisUnit.TIME_1E_13_S)
    field = build_beam(GaussianBeamSpec.new(sigma_x=1.2, sigma_2=2.5, chirp=0.2), x_axis, t_axis)
    separable = kirkwood_4d(field)
    dense = kirkwood_4d(densify(field))
    assert separable.is_separable
    assert not dense.is_separable
    assert np.allclose(dense.values, separable.dense_values(), atol=1e-14)


def test_inversion_recovers_the_wigner_distribution():
    x_axis = make_axis(center=0.0, span=16.0, n=65, unit=AxisUnit.POSITION_MM)
    w_axis = make_axis(center=0.0, span=12.0, n=65, unit=AxisUnit.FREQUENCY_1E13_RAD_S)
    spec = GaussianBeamSpec.new(sigma_x=1.0, sigma_2=1.0, chirp=0.25, second_domain='frequency')
    field = build_beam(spec, x_axis, w_axis)
    inverted = invert_k_to_w(kirkwood_4d(field))
    expected = wigner_4d(field)
    assert inverted.kind == DistributionKind.WIGNER
    assert inverted.shape == expected.shape
    for inverted_factor, expected_factor in [(inverted.factor_xp, expected.factor_xp),
                                             (inverted.factor_wt, expected.factor_wt)]:
        scale = np.max(np.abs(expected_factor.values))
        assert np.allclose(inverted_factor.values.real, expected_factor.values.real, atol=1e-6 * scale)


def test_inversion_of_a_wigner_distribution_errors(field_1d):
    w_axis = make_axis(center=0.0, span=12.0, n=16, unit=AxisUnit.FREQUENCY_1E13_RAD_S)
    field = build_beam(GaussianBeamSpec.new(second_domain='frequency'), field_1d.axis, w_axis)
    with pytest.raises(NotKirkwoodError):
        invert_k_to_w(wigner_4d(field))


def test_kirkwood_distributions_default_to_the_frequency_base_orientation(field_1d):
    w_axis = make_axis(center=0.0, span=12.0, n=16, unit=AxisUnit.FREQUENCY_1E13_RAD_S)
    field = build_beam(GaussianBeamSpec.new(second_domain='frequency'), field_1d.axis, w_axis)
    assert kirkwood_4d(field).orientation == KirkwoodOrientation.FREQUENCY_BASE


def test_unit_amplitude_gaussian_kirkwood_distribution_at_the_origin():
    axis = make_axis(center=0.0, span=16.0, n=33, unit=AxisUnit.POSITION_MM)
    distribution = kirkwood_1d(ComplexField1D.new(axis=axis, values=np.exp(-axis.samples ** 2 / 2)))
    origin = distribution.axis1.nearest_index(0.0), distribution.axis2.nearest_index(0.0)
    assert distribution.values[origin] == pytest.approx(1 / np.sqrt(2 * np.pi), abs=1e-6)


def create_time_base_distribution(kirkwood):
    factor_wt = Dist2D.new(axis1=kirkwood.factor_wt.axis1, axis2=kirkwood.factor_wt.axis2,
                           values=np.conj(kirkwood.factor_wt.values), kind=DistributionKind.KIRKWOOD)
    return Dist4D.new_separable(factor_xp=kirkwood.factor_xp, factor_wt=factor_wt, kind=DistributionKind.KIRKWOOD,
                                combine_rule=CombineRule.PRODUCT, orientation=KirkwoodOrientation.TIME_BASE)


def test_time_base_inversion_matches_the_frequency_base_inversion():
    x_axis = make_axis(center=0.0, span=16.0, n=48, unit=AxisUnit.POSITION_MM)
    t_axis = make_axis(center=0.0, span=16.0, n=48, unit=AxisUnit.TIME_1E_13_S)
    field = build_beam(GaussianBeamSpec.new(sigma_x=1.2, sigma_2=2.0, chirp=0.2), x_axis, t_axis)
    kirkwood = kirkwood_4d(field)
    frequency_base = invert_k_to_w(kirkwood)
    time_base = invert_k_to_w(create_time_base_distribution(kirkwood))
    expected = wigner_4d(field)
    for time_base_factor, frequency_base_factor, expected_factor in [
            (time_base.factor_xp, frequency_base.factor_xp, expected.factor_xp),
            (time_base.factor_wt, frequency_base.factor_wt, expected.factor_wt)]:
        assert time_base_factor.axis1.matches(expected_factor.axis1)
        assert time_base_factor.axis2.matches(expected_factor.axis2)
        assert np.allclose(time_base_factor.values.real, frequency_base_factor.values.real, atol=1e-12)


def test_dense_time_base_inversion_matches_the_separable_inversion():
    x_axis = make_axis(center=0.0, span=10.0, n=12, unit=AxisUnit.POSITION_MM)
    t_axis = make_axis(center=0.0, span=16.0, n=12, unit=AxisUnit.TIME_1E_13_S)
    field = build_beam(GaussianBeamSpec.new(sigma_x=1.2, sigma_2=2.5, chirp=0.2), x_axis, t_axis)
    separable = create_time_base_distribution(kirkwood_4d(field))
    dense = Dist4D.new_dense(axes=separable.axes, values=separable.dense_values(), kind=DistributionKind.KIRKWOOD,
                             orientation=KirkwoodOrientation.TIME_BASE)
    separable_inverted = invert_k_to_w(separable)
    dense_inverted = invert_k_to_w(dense)
    assert dense_inverted.axes == separable_inverted.axes
    expected = separable_inverted.dense_values().real
    assert np.allclose(dense_inverted.values.real, expected, atol=1e-8 * np.max(np.abs(expected)))


@pytest.mark.parametrize('scenario', ['wire', 'filter'])
def test_inversion_recovers_the_wigner_distribution_of_the_scenario_fields(scenario):
    grid = GridConfiguration.new(points=64)
    if scenario == 'wire':
        beam, mask = GaussianBeamSpec.wire(), MaskSpec.wire()
    else:
        beam, mask = GaussianBeamSpec.absorption_filter(), MaskSpec.absorption_filter()
    field = apply_mask(build_beam(beam, *grid.axes(beam.second_domain)), mask)
    inverted = invert_k_to_w(kirkwood_4d(field))
    expected = wigner_4d(field)
    for inverted_factor, expected_factor in [(inverted.factor_xp, expected.factor_xp),
                                             (inverted.factor_wt, expected.factor_wt)]:
        difference = np.linalg.norm(inverted_factor.values.real - expected_factor.values.real)
        assert difference / np.linalg.norm(expected_factor.values.real) < 1e-3
