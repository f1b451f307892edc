"""
Sampled axes, complex fields and continuum Fourier transform related public interface.
"""
from tomophase.internal.sampled_axis import (
    AxisUnit,
    SampledAxis,
    conjugate_axis,
    make_axis,
    refine_axis,
)
from tomophase.internal.complex_field import (
    ComplexField1D,
    ComplexField2D,
    FieldDomain,
    SeparableField,
    densify,
    inner_product,
)
from tomophase.internal.fourier import (
    continuum_dft,
    fourier_1d,
    refine_field,
    shift_field,
    to_base_domain,
    translation_axis,
)

__all__ = [
    'AxisUnit',
    'ComplexField1D',
    'ComplexField2D',
    'conjugate_axis',
    'continuum_dft',
    'densify',
    'FieldDomain',
    'fourier_1d',
    'inner_product',
    'make_axis',
    'refine_axis',
    'refine_field',
    'SampledAxis',
    'SeparableField',
    'shift_field',
    'to_base_domain',
    'translation_axis',
]
