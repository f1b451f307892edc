"""
Run configuration documents: presets, strict parsing, and validation.
"""
from __future__ import annotations

import copy
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from public import public
from typing_extensions import Self

from tomophase.internal.beam import DEFAULT_CHIRP, GaussianBeamSpec, MaskAxisRole, MaskSpec, SecondDomain
from tomophase.internal.distribution import BYTES_PER_MEGABYTE, Coordinate, SliceSpec
from tomophase.internal.errors import ConfigParseError, ConfigValidationError
from tomophase.internal.local_oscillator import LOSpec
from tomophase.internal.sampled_axis import AxisUnit, SampledAxis, conjugate_axis, make_axis

try:
    from enum import StrEnum
except ImportError:
    from backports.strenum import StrEnum

try:
    import tomllib
except ImportError:
    import tomli as tomllib

logger = logging.getLogger(__name__)

DEFAULT_CHIRP_SOURCE = 'default, λ=800nm'


@public
class Scenario(StrEnum):
    WIRE = 'wire'
    FILTER = 'filter'
    CUSTOM = 'custom'


@public
class SliceDistribution(StrEnum):
    """
    The distribution a requested slice is taken from.
    """
    WIGNER = 'wigner'
    KIRKWOOD = 'kirkwood'
    RECONSTRUCTED = 'reconstructed'


@public
@dataclass(frozen=True)
class GridConfiguration:
    """
    The sampling of a run.

    :ivar points: The number of samples per axis.
    :ivar spatial_span: The span of the position axis in mm.
    :ivar temporal_span: The span of the time axis for time domain beams.
    :ivar spectral_span: The span of the frequency axis for frequency domain beams.
    """

    points: int
    spatial_span: float
    temporal_span: float
    spectral_span: float

    @classmethod
    def new(cls, *, points: int = 256, spatial_span: float = 8.0, temporal_span: float = 16.0,
            spectral_span: float = 6.0) -> Self:
        return cls(points=points, spatial_span=spatial_span, temporal_span=temporal_span, spectral_span=spectral_span)

    def axes(self, second_domain: SecondDomain) -> tuple[SampledAxis, SampledAxis]:
        """
        Builds the position axis and the axis of the beam's second domain. The other spectral axis is its conjugate.

        :param second_domain: The domain the beam's second factor is specified in.
        :return: The position axis and the time or frequency axis.
        """
        x_axis = make_axis(0.0, self.spatial_span, self.points, AxisUnit.POSITION_MM)
        if second_domain == SecondDomain.TIME:
            return x_axis, make_axis(0.0, self.temporal_span, self.points, AxisUnit.TIME_1E_13_S)
        return x_axis, make_axis(0.0, self.spectral_span, self.points, AxisUnit.FREQUENCY_1E13_RAD_S)

    def position_frequency_axes(self, second_domain: SecondDomain) -> tuple[SampledAxis, SampledAxis]:
        x_axis, second_axis = self.axes(second_domain)
        if second_axis.unit == AxisUnit.TIME_1E_13_S:
            return x_axis, conjugate_axis(second_axis)
        return x_axis, second_axis


@public
@dataclass(frozen=True)
class ScanConfiguration:
    enabled: bool = False
    f_over_k: float = 1.0


@public
@dataclass(frozen=True)
class OutputConfiguration:
    csv: bool = True
    heatmap: bool = False
    manifest: bool = True
    figures: bool = False


@public
@dataclass(frozen=True)
class RuntimeConfiguration:
    """
    :ivar memory_budget_mb: The memory budget for dense arrays in megabytes.
    :ivar jobs: The number of parallel jobs for dense scans.
    """
    memory_budget_mb: int = 512
    jobs: int = 1

    @property
    def memory_budget_bytes(self) -> int:
        return self.memory_budget_mb * BYTES_PER_MEGABYTE


@public
@dataclass(frozen=True)
class SliceRequest:
    """
    A slice to export.

    :ivar name: The name, used as the output file stem.
    :ivar distribution: The distribution to slice.
    :ivar slice_spec: The fixed coordinates.
    """

    name: str
    distribution: SliceDistribution
    slice_spec: SliceSpec

    @classmethod
    def new(cls, *, distribution: SliceDistribution, name: str | None = None, **fixed: float) -> Self:
        slice_spec = SliceSpec.new(**fixed)
        distribution = SliceDistribution(distribution)
        if name is None:
            name = default_slice_name(distribution, slice_spec)
        return cls(name=name, distribution=distribution, slice_spec=slice_spec)


def _format_coordinate_value(value: float) -> str:
    return f'{value:g}'.replace('-', 'm').replace('.', 'p')


def default_slice_name(distribution: SliceDistribution, slice_spec: SliceSpec) -> str:
    free_first, free_second = slice_spec.free
    fixed_parts = '_'.join(f'{coordinate}_{_format_coordinate_value(value)}' for coordinate, value in slice_spec.fixed)
    return f'{distribution}_{free_first}_{free_second}_at_{fixed_parts}'


@public
@dataclass(frozen=True)
class RunConfig:
    """
    The complete configuration of a run.

    :ivar scenario: The scenario.
    :ivar beam: The signal beam.
    :ivar mask: The mask, if any.
    :ivar mask_inverted: Whether the mask passes its band instead of blocking it.
    :ivar renormalize_mask: Whether the transmitted field is rescaled to unit norm.
    :ivar lo: The local oscillator used by scans.
    :ivar grid: The sampling.
    :ivar scan: The scan settings.
    :ivar outputs: Which outputs to write.
    :ivar runtime: Resource limits.
    :ivar slices: The slices to export.
    :ivar chirp_source: Where the beam chirp came from, for the manifest.
    :ivar out_dir: The output directory.
    """

    scenario: Scenario
    beam: GaussianBeamSpec
    mask: MaskSpec | None
    mask_inverted: bool
    renormalize_mask: bool
    lo: LOSpec
    grid: GridConfiguration
    scan: ScanConfiguration
    outputs: OutputConfiguration
    runtime: RuntimeConfiguration
    slices: tuple[SliceRequest, ...]
    chirp_source: str = 'configured'
    out_dir: Path | None = None

    def to_echo(self) -> dict[str, Any]:
        """
        The configuration as plain data for the run manifest.
        """
        beam = {'sigma_x': self.beam.sigma_x, 'sigma_2': self.beam.sigma_2, 'chirp': self.beam.chirp,
                'chirp_source': self.chirp_source, 'omega0': self.beam.omega0,
                'second_domain': str(self.beam.second_domain)}
        mask = None
        if self.mask is not None:
            mask = {'lo': self.mask.lo, 'hi': self.mask.hi, 'axis_role': str(self.mask.axis_role),
                    'inverted': self.mask_inverted}
        return {
            'scenario': str(self.scenario),
            'beam': beam,
            'mask': mask,
            'renormalize_mask': self.renormalize_mask,
            'lo': {'a': self.lo.a, 'A': self.lo.A, 'alpha': self.lo.alpha, 'beta': self.lo.beta,
                   'gamma': self.lo.gamma, 'phi': self.lo.phi},
            'grid': {'points': self.grid.points, 'spatial_span': self.grid.spatial_span,
                     'temporal_span': self.grid.temporal_span, 'spectral_span': self.grid.spectral_span},
            'scan': {'enabled': self.scan.enabled, 'f_over_k': self.scan.f_over_k},
            'outputs': {'csv': self.outputs.csv, 'heatmap': self.outputs.heatmap,
                        'manifest': self.outputs.manifest, 'figures': self.outputs.figures},
            'runtime': {'memory_budget_mb': self.runtime.memory_budget_mb, 'jobs': self.runtime.jobs},
            'slices': [{'name': request.name, 'distribution': str(request.distribution),
                        'fixed': {str(coordinate): value for coordinate, value in request.slice_spec.fixed}}
                       for request in self.slices],
        }


_float = 'float'
_int = 'int'
_bool = 'bool'
_str = 'str'

_schema: dict[str, Any] = {
    'scenario': _str,
    'renormalize_mask': _bool,
    'beam': {'sigma_x': _float, 'sigma_2': _float, 'chirp': _float, 'omega0': _float, 'second_domain': _str},
    'mask': {'lo': _float, 'hi': _float, 'axis_role': _str, 'inverted': _bool},
    'lo': {'a': _float, 'A': _float, 'alpha': _float, 'beta': _float, 'gamma': _float, 'phi': _float},
    'grid': {'points': _int, 'spatial_span': _float, 'temporal_span': _float, 'spectral_span': _float},
    'scan': {'enabled': _bool, 'f_over_k': _float},
    'outputs': {'csv': _bool, 'heatmap': _bool, 'manifest': _bool, 'figures': _bool},
    'runtime': {'memory_budget_mb': _int, 'jobs': _int},
}
_slice_schema = {'name': _str, 'distribution': _str, 'fixed': {str(coordinate): _float for coordinate in Coordinate}}


def _wire_slices() -> list[dict[str, Any]]:
    return [
        {'distribution': 'kirkwood', 'fixed': {'omega': 0.0, 't': 0.0}},
        {'distribution': 'kirkwood', 'fixed': {'x': 0.4, 'p': 0.0}},
        *_phase_space_slices(),
    ]


def _phase_space_slices() -> list[dict[str, Any]]:
    return [
        {'distribution': 'wigner', 'fixed': {'omega': 0.0, 't': 0.0}},
        {'distribution': 'wigner', 'fixed': {'x': 0.4, 'p': 0.0}},
        {'distribution': 'wigner', 'fixed': {'x': 0.0, 'p': 2.0}},
        *_cross_pair_slices(),
    ]


def _cross_pair_slices() -> list[dict[str, Any]]:
    return [
        {'distribution': 'wigner', 'fixed': {'x': 0.0, 'omega': 0.0}},
        {'distribution': 'wigner', 'fixed': {'x': 0.0, 't': 0.0}},
        {'distribution': 'wigner', 'fixed': {'p': 0.0, 'omega': 0.0}},
        {'distribution': 'wigner', 'fixed': {'p': 0.0, 't': 0.0}},
    ]


def _filter_slices() -> list[dict[str, Any]]:
    return [
        {'distribution': 'kirkwood', 'fixed': {'x': 0.0, 'p': 0.0}},
        {'distribution': 'kirkwood', 'fixed': {'omega': 0.2, 't': 0.0}},
        {'distribution': 'wigner', 'fixed': {'x': 0.0, 'p': 0.0}},
        {'distribution': 'wigner', 'fixed': {'omega': 0.0, 't': 0.0}},
        {'distribution': 'wigner', 'fixed': {'omega': 0.0, 't': 3.0}},
        *_cross_pair_slices(),
    ]


def preset_document(scenario: Scenario) -> dict[str, Any]:
    """
    The configuration document a scenario starts from before overrides.

    :param scenario: The scenario.
    :return: The preset document.
    """
    if scenario == Scenario.WIRE:
        beam = GaussianBeamSpec.wire()
        mask = MaskSpec.wire()
        slices = _wire_slices()
    elif scenario == Scenario.FILTER:
        beam = GaussianBeamSpec.absorption_filter()
        mask = MaskSpec.absorption_filter()
        slices = _filter_slices()
    else:
        beam = GaussianBeamSpec.new()
        mask = None
        slices = [{'distribution': 'wigner', 'fixed': {'omega': 0.0, 't': 0.0}},
                  {'distribution': 'wigner', 'fixed': {'x': 0.0, 'p': 0.0}}]
    lo = LOSpec.ideal()
    document: dict[str, Any] = {
        'beam': {'sigma_x': beam.sigma_x, 'sigma_2': beam.sigma_2, 'chirp': beam.chirp, 'omega0': beam.omega0,
                 'second_domain': str(beam.second_domain)},
        'slices': slices,
        'lo': {'a': lo.a, 'A': lo.A, 'alpha': lo.alpha, 'beta': lo.beta, 'gamma': lo.gamma, 'phi': lo.phi},
    }
    if mask is not None:
        document['mask'] = {'lo': mask.lo, 'hi': mask.hi, 'axis_role': str(mask.axis_role), 'inverted': False}
    return document


def _find_key_line(text: str, key: str) -> int | None:
    pattern = re.compile(rf'^\s*["\']?{re.escape(key)}["\']?\s*=', re.MULTILINE)
    match = pattern.search(text)
    if match is None:
        table_pattern = re.compile(rf'^\s*\[+\s*{re.escape(key)}\s*\]+', re.MULTILINE)
        match = table_pattern.search(text)
    if match is None:
        return None
    return text.count('\n', 0, match.start()) + 1


def _check_value_type(value: Any, expected_type: str, key: str) -> Any:
    if expected_type == _float and isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if expected_type == _int and isinstance(value, int) and not isinstance(value, bool):
        return value
    if expected_type == _bool and isinstance(value, bool):
        return value
    if expected_type == _str and isinstance(value, str):
        return value
    error_message = f'Configuration key {key!r} needs a {expected_type} value, but {value!r} was given.'
    raise ConfigValidationError(error_message, invariant=key)


def _check_table(table: Any, schema: dict[str, Any], prefix: str, text: str) -> dict[str, Any]:
    if not isinstance(table, dict):
        error_message = f'Configuration key {prefix!r} must be a table.'
        raise ConfigValidationError(error_message, invariant=prefix)
    checked: dict[str, Any] = {}
    for key, value in table.items():
        dotted_key = f'{prefix}.{key}' if prefix else key
        if key == 'slices' and prefix == '':
            checked[key] = _check_slices(value, text)
            continue
        if key not in schema:
            error_message = f'Unknown configuration key {dotted_key!r}.'
            raise ConfigParseError(error_message, line=_find_key_line(text, key), key=dotted_key)
        expected = schema[key]
        if isinstance(expected, dict):
            checked[key] = _check_table(value, expected, dotted_key, text)
        else:
            checked[key] = _check_value_type(value, expected, dotted_key)
    return checked


def _check_slices(slices: Any, text: str) -> list[dict[str, Any]]:
    if not isinstance(slices, list):
        error_message = 'Configuration key \'slices\' must be an array of tables.'
        raise ConfigValidationError(error_message, invariant='slices')
    return [_check_table(slice_table, _slice_schema, f'slices[{index}]', text)
            for index, slice_table in enumerate(slices)]


def _merge(base: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _build(constructor, key: str, **kwargs):
    try:
        return constructor(**kwargs)
    except ValueError as error:
        raise ConfigValidationError(str(error), invariant=key) from error


def _require(condition: bool, message: str, invariant: str) -> None:  # noqa FBT001
    if not condition:
        raise ConfigValidationError(message, invariant=invariant)


def _build_slices(slice_tables: list[dict[str, Any]], scan_enabled: bool) -> tuple[SliceRequest, ...]:  # noqa FBT001
    requests = []
    for index, slice_table in enumerate(slice_tables):
        key = f'slices[{index}]'
        _require('distribution' in slice_table, f'{key} needs a distribution.', f'{key}.distribution')
        _require(slice_table['distribution'] in list(SliceDistribution),
                 f'{key}.distribution must be one of {[str(value) for value in SliceDistribution]}.',
                 f'{key}.distribution')
        fixed = slice_table.get('fixed', {})
        _require(len(fixed) == 2, f'{key}.fixed must fix exactly two coordinates.', f'{key}.fixed')  # noqa PLR2004
        request = _build(SliceRequest.new, key, distribution=slice_table['distribution'],
                         name=slice_table.get('name'), **fixed)
        if request.distribution == SliceDistribution.RECONSTRUCTED:
            _require(scan_enabled, f'{key} slices the reconstructed distribution, which needs scan.enabled.',
                     'reconstructed slices need a scan')
        requests.append(request)
    names = [request.name for request in requests]
    _require(len(set(names)) == len(names), f'Slice names must be unique, but got {names}.', 'unique slice names')
    return tuple(requests)


def _build_run_config(document: dict[str, Any], scenario: Scenario, chirp_source: str) -> RunConfig:
    beam_table = document.get('beam', {})
    _require(beam_table.get('second_domain', 'time') in list(SecondDomain),
             'beam.second_domain must be time or frequency.', 'beam.second_domain')
    beam = _build(GaussianBeamSpec.new, 'beam', **beam_table)
    mask = None
    mask_inverted = False
    if 'mask' in document:
        mask_table = dict(document['mask'])
        mask_inverted = mask_table.pop('inverted', False)
        _require('lo' in mask_table and 'hi' in mask_table, 'A mask needs both lo and hi.', 'mask.lo < mask.hi')
        _require(mask_table.get('axis_role') in list(MaskAxisRole), 'mask.axis_role must be position or frequency.',
                 'mask.axis_role')
        mask = _build(MaskSpec.new, 'mask.lo < mask.hi', **mask_table)
    if scenario == Scenario.WIRE:
        _require(mask is not None and mask.axis_role == MaskAxisRole.POSITION,
                 'The wire scenario needs a position mask.', 'scenario=wire implies mask.axis_role=position')
    if scenario == Scenario.FILTER:
        _require(mask is not None and mask.axis_role == MaskAxisRole.FREQUENCY,
                 'The filter scenario needs a frequency mask.', 'scenario=filter implies mask.axis_role=frequency')
    lo = _build(LOSpec.new, 'lo', **document.get('lo', {}))
    grid = GridConfiguration.new(**document.get('grid', {}))
    _require(grid.points >= 2, 'grid.points must be at least 2.', 'grid.points')  # noqa PLR2004
    for span_name in ('spatial_span', 'temporal_span', 'spectral_span'):
        _require(getattr(grid, span_name) > 0, f'grid.{span_name} must be positive.', f'grid.{span_name}')
    scan = ScanConfiguration(**document.get('scan', {}))
    _require(scan.f_over_k > 0, 'scan.f_over_k must be positive.', 'scan.f_over_k')
    outputs = OutputConfiguration(**document.get('outputs', {}))
    runtime = RuntimeConfiguration(**document.get('runtime', {}))
    _require(runtime.memory_budget_mb > 0, 'runtime.memory_budget_mb must be positive.', 'runtime.memory_budget_mb')
    _require(runtime.jobs >= 1, 'runtime.jobs must be at least 1.', 'runtime.jobs')
    slices = _build_slices(document.get('slices', []), scan.enabled)
    return RunConfig(scenario=scenario, beam=beam, mask=mask, mask_inverted=mask_inverted,
                     renormalize_mask=document.get('renormalize_mask', False), lo=lo, grid=grid, scan=scan,
                     outputs=outputs, runtime=runtime, slices=slices, chirp_source=chirp_source)


@public
def parse_config(text: str, scenario: Scenario | str | None = None,
                 overrides: dict[str, Any] | None = None) -> RunConfig:
    """
    Parses and validates a TOML run configuration document. The document overrides the scenario preset, and
    `overrides` (such as command line flags) override the document.

    :param text: The TOML document. May be empty.
    :param scenario: The scenario. If None, the document's `scenario` key is used.
    :param overrides: Nested overrides applied after the document.
    :return: The validated configuration.
    """
    try:
        raw_document = tomllib.loads(text)
    except tomllib.TOMLDecodeError as error:
        line = getattr(error, 'lineno', None)
        column = getattr(error, 'colno', None)
        if line is None:
            position_match = re.search(r'line (\d+), column (\d+)', str(error))
            if position_match is not None:
                line, column = int(position_match.group(1)), int(position_match.group(2))
        error_message = f'Could not parse the configuration document: {error}'
        raise ConfigParseError(error_message, line=line, column=column) from error
    document = _check_table(raw_document, _schema, '', text)
    if overrides is not None:
        document = _merge(document, _check_table(overrides, _schema, '', ''))
    document_scenario = document.pop('scenario', None)
    if scenario is None:
        scenario = document_scenario if document_scenario is not None else Scenario.CUSTOM
    _require(scenario in list(Scenario), f'Unknown scenario {scenario!r}.', 'scenario')
    scenario = Scenario(scenario)
    if document_scenario is not None and document_scenario != scenario:
        error_message = f'The document is for the {document_scenario} scenario, but {scenario} was requested.'
        raise ConfigValidationError(error_message, invariant='scenario')
    preset = preset_document(scenario)
    if 'slices' in document:
        preset.pop('slices')
    merged = _merge(preset, document)
    chirp_source = 'configured'
    if scenario == Scenario.WIRE and merged['beam']['chirp'] == DEFAULT_CHIRP and 'chirp' not in document.get(
            'beam', {}):
        chirp_source = DEFAULT_CHIRP_SOURCE
    configuration = _build_run_config(merged, scenario, chirp_source)
    logger.debug(f'Parsed a {scenario} configuration with {len(configuration.slices)} slices.')
    return configuration
