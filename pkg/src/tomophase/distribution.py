"""
Phase-space distribution related public interface.
"""
from tomophase.internal.distribution import (
    CombineRule,
    Coordinate,
    Dist2D,
    Dist4D,
    DistributionKind,
    KirkwoodOrientation,
    SliceSpec,
    marginal,
    slice_distribution,
)
from tomophase.internal.wigner import (
    cross_wigner_1d,
    wigner_1d,
    wigner_4d,
    wigner_4d_dense,
)
from tomophase.internal.kirkwood import (
    invert_k_to_w,
    kirkwood_1d,
    kirkwood_4d,
)

__all__ = [
    'CombineRule',
    'Coordinate',
    'cross_wigner_1d',
    'Dist2D',
    'Dist4D',
    'DistributionKind',
    'invert_k_to_w',
    'KirkwoodOrientation',
    'kirkwood_1d',
    'kirkwood_4d',
    'marginal',
    'SliceSpec',
    'slice_distribution',
    'wigner_1d',
    'wigner_4d',
    'wigner_4d_dense',
]
