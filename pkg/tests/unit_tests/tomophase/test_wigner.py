import numpy as np
import pytest

from tomophase.internal.complex_field import ComplexField1D, SeparableField, densify
from tomophase.internal.distribution import Coordinate, DistributionKind, marginal
from tomophase.internal.errors import AxisMismatchError
from tomophase.internal.fourier import continuum_dft, refine_values
from tomophase.internal.sampled_axis import AxisUnit, conjugate_axis, make_axis, refine_axis
from tomophase.internal.wigner import cross_wigner_1d, wigner_1d, wigner_4d, wigner_4d_dense


@pytest.fixture()
def x_axis():
    return make_axis(center=0.0, span=20.0, n=128, unit=AxisUnit.POSITION_MM)


def create_gaussian(axis, chirp=0.0, momentum=0.0):
    samples = axis.samples
    values = np.pi ** -0.25 * np.exp(-samples ** 2 / 2 + 1j * chirp * samples ** 2 + 1j * momentum * samples)
    return ComplexField1D.new(axis=axis, values=values)


def test_gaussian_wigner_distribution(x_axis):
    distribution = wigner_1d(create_gaussian(x_axis))
    u = distribution.axis1.samples[:, np.newaxis]
    kappa = distribution.axis2.samples[np.newaxis, :]
    assert distribution.kind == DistributionKind.WIGNER
    assert distribution.values.shape == (256, 128)
    assert np.allclose(distribution.values, np.exp(-u ** 2 - kappa ** 2) / np.pi, atol=1e-9)


def test_chirped_gaussian_wigner_distribution_is_sheared(x_axis):
    distribution = wigner_1d(create_gaussian(x_axis, chirp=0.5))
    u = distribution.axis1.samples[:, np.newaxis]
    kappa = distribution.axis2.samples[np.newaxis, :]
    assert np.allclose(distribution.values, np.exp(-u ** 2 - (kappa - u) ** 2) / np.pi, atol=1e-8)


def test_momentum_offset_places_the_peak_on_the_positive_side(x_axis):
    distribution = wigner_1d(create_gaussian(x_axis, momentum=2.0))
    _, peak_index = np.unravel_index(np.argmax(distribution.values.real), distribution.values.shape)
    assert abs(distribution.axis2.samples[peak_index] - 2.0) <= distribution.axis2.step / 2


def test_marginals_match_the_intensities(x_axis):
    field = create_gaussian(x_axis, chirp=0.3, momentum=-1.0)
    distribution = wigner_1d(field)
    base_marginal = np.sum(distribution.values, axis=1) * distribution.axis2.step
    conjugate_marginal = np.sum(distribution.values, axis=0) * distribution.axis1.step
    refined_intensity = np.abs(refine_values(field.values, x_axis)) ** 2
    spectral_intensity = np.abs(continuum_dft(field.values, x_axis, conjugate_axis(x_axis), -1)) ** 2
    assert np.allclose(base_marginal, refined_intensity, atol=1e-12)
    assert np.allclose(conjugate_marginal, spectral_intensity, atol=1e-12)


def test_wigner_distribution_is_real(x_axis):
    rng = np.random.default_rng(0)
    envelope = np.exp(-x_axis.samples ** 2 / 4)
    field = ComplexField1D.new(axis=x_axis, values=envelope * (rng.normal(size=128) + 1j * rng.normal(size=128)))
    distribution = wigner_1d(field)
    assert distribution.realness_residual() < 1e-12


def test_cross_wigner_is_hermitian_under_exchange(x_axis):
    first = create_gaussian(x_axis, chirp=0.2)
    second = create_gaussian(x_axis, momentum=1.0)
    forward = cross_wigner_1d(first, second)
    backward = cross_wigner_1d(second, first)
    assert np.allclose(forward.values, np.conj(backward.values), atol=1e-14)


def test_cross_wigner_requires_a_shared_axis(x_axis):
    other_axis = make_axis(center=0.0, span=21.0, n=128, unit=AxisUnit.POSITION_MM)
    with pytest.raises(AxisMismatchError):
        cross_wigner_1d(create_gaussian(x_axis), create_gaussian(other_axis))


def test_time_field_wigner_is_over_frequency_and_time():
    t_axis = make_axis(center=0.0, span=20.0, n=64, unit=AxisUnit.TIME_1E_13_S)
    field = ComplexField1D.new(axis=t_axis, values=np.exp(-t_axis.samples ** 2 / 2))
    distribution = wigner_1d(field)
    assert distribution.axis1.unit == AxisUnit.FREQUENCY_1E13_RAD_S
    assert distribution.axis2.unit == AxisUnit.TIME_1E_13_S
    assert distribution.axis2.matches(t_axis)


def test_separable_wigner_distribution_integrates_to_the_field_energy(x_axis):
    w_axis = make_axis(center=0.0, span=16.0, n=64, unit=AxisUnit.FREQUENCY_1E13_RAD_S)
    spectral = ComplexField1D.new(axis=w_axis, values=np.exp(-(w_axis.samples - 1) ** 2 / 2)).normalized()
    field = SeparableField.new(spatial=create_gaussian(x_axis, chirp=0.1), spectral=spectral)
    distribution = wigner_4d(field)
    assert distribution.is_separable
    assert distribution.shape == (256, 128, 128, 64)
    assert np.isclose(marginal(distribution, set(Coordinate)), field.norm ** 2)


def test_dense_wigner_distribution_of_a_separable_field_matches_the_factor_product():
    x_axis = make_axis(center=0.0, span=10.0, n=16, unit=AxisUnit.POSITION_MM)
    t_axis = make_axis(center=0.0, span=12.0, n=16, unit=AxisUnit.TIME_1E_13_S)
    spatial = ComplexField1D.new(axis=x_axis, values=np.exp(-x_axis.samples ** 2 / 2 + 0.2j * x_axis.samples ** 2))
    spectral = ComplexField1D.new(axis=t_axis, values=np.exp(-t_axis.samples ** 2 / 4))
    field = SeparableField.new(spatial=spatial, spectral=spectral)
    separable = wigner_4d(field)
    dense = wigner_4d_dense(densify(field))
    assert dense.shape == separable.shape
    assert all(dense_axis.matches(axis) for dense_axis, axis in zip(dense.axes, separable.axes))
    assert np.allclose(dense.values, separable.dense_values(), atol=1e-12)


def brute_force_wigner(function, axis):
    """
    Evaluates (1/2π) Σ_j Δ e^{ijΔκ} f*(u + jΔ/2) f(u - jΔ/2) point by point from the analytic field.
    """
    refined_samples = refine_axis(axis).samples
    conjugate_samples = conjugate_axis(axis).samples
    offsets = np.arange(-(axis.n - 1), axis.n) * axis.step
    values = np.empty((refined_samples.size, conjugate_samples.size), dtype=np.complex128)
    for refined_index, u in enumerate(refined_samples):
        products = np.conj(function(u + offsets / 2)) * function(u - offsets / 2)
        for conjugate_index, kappa in enumerate(conjugate_samples):
            values[refined_index, conjugate_index] = np.sum(np.exp(1j * offsets * kappa) * products)
    return values * axis.step / (2 * np.pi)


def test_wigner_distribution_matches_a_brute_force_sum():
    axis = make_axis(center=0.0, span=13.0, n=32, unit=AxisUnit.POSITION_MM)

    def function(u):
        return np.exp(-u ** 2 / 2 + 0.5j * u)

    distribution = wigner_1d(ComplexField1D.new(axis=axis, values=function(axis.samples)))
    expected = brute_force_wigner(function, axis)
    assert np.linalg.norm(distribution.values - expected) / np.linalg.norm(expected) < 1e-8


def test_unit_amplitude_gaussian_wigner_distribution_at_the_origin():
    axis = make_axis(center=0.0, span=16.0, n=33, unit=AxisUnit.POSITION_MM)
    distribution = wigner_1d(ComplexField1D.new(axis=axis, values=np.exp(-axis.samples ** 2 / 2)))
    origin = distribution.axis1.nearest_index(0.0), distribution.axis2.nearest_index(0.0)
    assert distribution.axis1.samples[origin[0]] == pytest.approx(0.0, abs=1e-12)
    assert distribution.values[origin].real == pytest.approx(1 / np.sqrt(np.pi), abs=1e-6)
