"""
Signal beam, mask and local oscillator related public interface.
"""
from tomophase.internal.beam import (
    GaussianBeamSpec,
    MaskAxisRole,
    MaskSpec,
    SecondDomain,
    apply_mask,
    build_beam,
    chirp_from_curvature,
    renormalize,
)
from tomophase.internal.local_oscillator import (
    LOSpec,
    LocalOscillator,
    build_lo,
    build_lo_components,
)

__all__ = [
    'apply_mask',
    'build_beam',
    'build_lo',
    'build_lo_components',
    'chirp_from_curvature',
    'GaussianBeamSpec',
    'LocalOscillator',
    'LOSpec',
    'MaskAxisRole',
    'MaskSpec',
    'renormalize',
    'SecondDomain',
]
