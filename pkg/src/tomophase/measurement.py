"""
Heterodyne measurement related public interface.
"""
from tomophase.internal.heterodyne import (
    MeasurementScan,
    ScanGrid,
    beat_amplitude,
    mean_square_beat_conv,
    run_scan,
)
from tomophase.internal.lo_wigner import (
    LoWignerForm,
    lo_wigner_approx,
)

__all__ = [
    'beat_amplitude',
    'LoWignerForm',
    'lo_wigner_approx',
    'mean_square_beat_conv',
    'MeasurementScan',
    'run_scan',
    'ScanGrid',
]
