"""
Run configuration, execution and output related public interface.
"""
from tomophase.internal.run_configuration import (
    GridConfiguration,
    OutputConfiguration,
    RunConfig,
    RuntimeConfiguration,
    ScanConfiguration,
    Scenario,
    SliceDistribution,
    SliceRequest,
    parse_config,
)
from tomophase.internal.run_session import (
    RunManifest,
    run,
)
from tomophase.internal.export import (
    Component,
    HeatmapScale,
    Palette,
    export_heatmap,
    export_slice_csv,
)

__all__ = [
    'Component',
    'export_heatmap',
    'export_slice_csv',
    'GridConfiguration',
    'HeatmapScale',
    'OutputConfiguration',
    'Palette',
    'parse_config',
    'run',
    'RunConfig',
    'RunManifest',
    'RuntimeConfiguration',
    'ScanConfiguration',
    'Scenario',
    'SliceDistribution',
    'SliceRequest',
]
