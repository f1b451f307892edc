"""
Runs a configured scenario end to end and writes its outputs.
"""
from __future__ import annotations

import json
import logging
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt
from public import public

from tomophase.__about__ import __version__
from tomophase.internal.beam import apply_mask, build_beam, renormalize
from tomophase.internal.complex_field import SeparableField
from tomophase.internal.distribution import Coordinate, Dist2D, Dist4D, DistributionKind, marginal, slice_distribution
from tomophase.internal.errors import InvariantCheckError, OutputError
from tomophase.internal.export import Component, HeatmapScale, Palette, export_heatmap, export_slice_csv
from tomophase.internal.figures import plot_slice
from tomophase.internal.fourier import continuum_dft, refine_values, to_base_domain
from tomophase.internal.heterodyne import ScanGrid, run_scan
from tomophase.internal.kirkwood import invert_k_to_w, kirkwood_4d
from tomophase.internal.local_oscillator import build_lo_components
from tomophase.internal.logging import get_record_name
from tomophase.internal.run_configuration import RunConfig, SliceDistribution
from tomophase.internal.sampled_axis import conjugate_axis
from tomophase.internal.wigner import wigner_4d

logger = logging.getLogger(__name__)

MARGINAL_RESIDUAL_LIMIT = 1e-4
MANIFEST_FILE_NAME = 'manifest.json'


@public
@dataclass
class RunManifest:
    """
    The record of a run.

    :ivar config: The configuration echo.
    :ivar version: The tomophase version.
    :ivar slices: The statistics and files of each slice, by name.
    :ivar invariants: The invariant check results.
    :ivar warnings: The warnings raised during the run.
    :ivar timings: The wall-clock durations of each stage in seconds.
    :ivar status: `ok` or `invariant_failure`.
    :ivar output_paths: The files written.
    """

    config: dict[str, Any]
    version: str
    slices: dict[str, dict[str, Any]] = field(default_factory=dict)
    invariants: dict[str, Any] = field(default_factory=dict)
    warnings: list[dict[str, str]] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    status: str = 'ok'
    output_paths: list[Path] = field(default_factory=list)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            'tool': 'tomophase',
            'version': self.version,
            'config': self.config,
            'slices': self.slices,
            'invariants': self.invariants,
            'warnings': self.warnings,
            'timings': self.timings,
            'status': self.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def _relative_l2(actual: npt.NDArray, expected: npt.NDArray) -> float:
    expected_norm = float(np.linalg.norm(expected))
    difference_norm = float(np.linalg.norm(actual - expected))
    if expected_norm == 0:
        return difference_norm
    return difference_norm / expected_norm


def _outer_extremes(first: npt.NDArray[np.float64], second: npt.NDArray[np.float64]) -> tuple[float, float]:
    candidates = np.multiply.outer([first.min(), first.max()], [second.min(), second.max()])
    return float(candidates.min()), float(candidates.max())


def check_invariants(field_: SeparableField, wigner: Dist4D, kirkwood: Dist4D) -> dict[str, Any]:
    """
    Checks the marginal, realness and Kirkwood-Rihaczek marginal identities of a run's distributions.

    :param field_: The signal field.
    :param wigner: The signal's Wigner distribution.
    :param kirkwood: The signal's Kirkwood-Rihaczek distribution.
    :return: The residuals and Wigner extremes.
    """
    spatial = to_base_domain(field_.spatial)
    spectral = to_base_domain(field_.spectral)
    refined_intensity = np.multiply.outer(np.abs(refine_values(spatial.values, spatial.axis)) ** 2,
                                          np.abs(refine_values(spectral.values, spectral.axis)) ** 2)
    conjugate_intensity = np.multiply.outer(
        np.abs(continuum_dft(spatial.values, spatial.axis, conjugate_axis(spatial.axis), -1)) ** 2,
        np.abs(continuum_dft(spectral.values, spectral.axis, conjugate_axis(spectral.axis), -1)) ** 2,
    )
    base_marginal = marginal(wigner, {Coordinate.P, Coordinate.T})
    conjugate_marginal = marginal(wigner, {Coordinate.X, Coordinate.OMEGA})
    total = marginal(wigner, set(Coordinate))
    energy = field_.norm ** 2
    xp_real = wigner.factor_xp.values.real
    wt_real = wigner.factor_wt.values.real
    minimum, maximum = _outer_extremes(xp_real, wt_real)
    kirkwood_spatial_marginal = np.sum(kirkwood.factor_xp.values, axis=1) * kirkwood.factor_xp.axis2.step
    kirkwood_spectral_marginal = np.sum(kirkwood.factor_wt.values, axis=1) * kirkwood.factor_wt.axis2.step
    kirkwood_residual = max(_relative_l2(kirkwood_spatial_marginal, np.abs(spatial.values) ** 2),
                            _relative_l2(kirkwood_spectral_marginal, np.abs(spectral.values) ** 2))
    return {
        'marginal_residual_p_t': _relative_l2(base_marginal.values.real, refined_intensity),
        'marginal_residual_x_omega': _relative_l2(conjugate_marginal.values.real, conjugate_intensity),
        'total_integral': total,
        'field_energy': energy,
        'realness_residual': max(wigner.factor_xp.realness_residual(), wigner.factor_wt.realness_residual()),
        'kirkwood_marginal_residual': kirkwood_residual,
        'wigner_minimum': minimum,
        'wigner_maximum': maximum,
        'wigner_minimum_over_maximum': minimum / maximum if maximum != 0 else 0.0,
    }


def _component_statistics(slice_: Dist2D, values: npt.NDArray[np.float64]) -> dict[str, Any]:
    first_name = str(slice_.axis1.unit).split('_')[0]
    second_name = str(slice_.axis2.unit).split('_')[0]
    argmin = np.unravel_index(int(np.argmin(values)), values.shape)
    argmax = np.unravel_index(int(np.argmax(values)), values.shape)
    first_samples = slice_.axis1.samples
    second_samples = slice_.axis2.samples
    return {
        'min': float(values.min()),
        'max': float(values.max()),
        'argmin': {first_name: float(first_samples[argmin[0]]), second_name: float(second_samples[argmin[1]])},
        'argmax': {first_name: float(first_samples[argmax[0]]), second_name: float(second_samples[argmax[1]])},
    }


def slice_statistics(slice_: Dist2D) -> dict[str, Any]:
    """
    Summarizes a slice by the extremes of its real part, and of its imaginary part for Kirkwood-Rihaczek slices.

    :param slice_: The slice.
    :return: The statistics.
    """
    statistics = {'real': _component_statistics(slice_, slice_.values.real),
                  'shape': [slice_.axis1.n, slice_.axis2.n],
                  'snap_distances': slice_.snap_distances}
    if slice_.kind == DistributionKind.KIRKWOOD:
        statistics['imaginary'] = _component_statistics(slice_, slice_.values.imag)
    else:
        statistics['realness_residual'] = slice_.realness_residual()
    return statistics


def _scale_record(scale: HeatmapScale) -> dict[str, Any]:
    return {'min': scale.minimum, 'max': scale.maximum, 'scale': scale.scale, 'palette': str(scale.palette),
            'component': str(scale.component)}


class _OutputWriter:
    """
    Tracks written files so a failed run can remove them.
    """

    def __init__(self, out_dir: Path):
        self.out_dir = out_dir
        self.paths: list[Path] = []

    def path_for(self, file_name: str) -> Path:
        path = self.out_dir / file_name
        self.paths.append(path)
        return path

    def remove_all(self, keep: set[Path] | None = None):
        keep = keep or set()
        for path in self.paths:
            if path not in keep and path.exists():
                path.unlink()


def _export_slice(name: str, slice_: Dist2D, config: RunConfig, writer: _OutputWriter) -> dict[str, Any]:
    record = slice_statistics(slice_)
    files = []
    heatmaps = {}
    if config.outputs.csv:
        path = writer.path_for(f'{name}.csv')
        export_slice_csv(slice_, path)
        files.append(path.name)
    components = [Component.REAL]
    if slice_.kind == DistributionKind.KIRKWOOD:
        components.append(Component.IMAGINARY)
    for component in components:
        suffix = '' if len(components) == 1 else f'_{"re" if component == Component.REAL else "im"}'
        if config.outputs.heatmap:
            path = writer.path_for(f'{name}{suffix}.pgm')
            heatmaps[path.name] = _scale_record(export_heatmap(slice_, path, Palette.SIGNED, component))
            files.append(path.name)
        if config.outputs.figures:
            path = writer.path_for(f'{name}{suffix}.png')
            plot_slice(slice_, path, title=f'{name}{suffix}', imaginary=component == Component.IMAGINARY)
            files.append(path.name)
    record['files'] = files
    if heatmaps:
        record['heatmaps'] = heatmaps
    return record


def _marginals_failed(invariants: dict[str, Any]) -> bool:
    return (invariants['marginal_residual_p_t'] > MARGINAL_RESIDUAL_LIMIT or
            invariants['marginal_residual_x_omega'] > MARGINAL_RESIDUAL_LIMIT)


@public
def run(config: RunConfig) -> RunManifest:
    """
    Runs a scenario: builds and masks the beam, computes its Wigner and Kirkwood-Rihaczek distributions, optionally
    simulates the heterodyne scan and inverts it, checks the invariants, and writes the requested slices and the
    manifest. Files written by a failed run are removed. A run failing its marginal checks writes only its manifest.

    :param config: The run configuration, with `out_dir` set.
    :return: The run manifest.
    """
    if config.out_dir is None:
        error_message = 'The run configuration has no output directory.'
        raise ValueError(error_message)
    out_dir = Path(config.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as error:
        error_message = f'Could not create the output directory {out_dir}: {error}'
        raise OutputError(error_message) from error
    writer = _OutputWriter(out_dir)
    manifest = RunManifest(config=config.to_echo(), version=__version__)
    manifest_path = out_dir / MANIFEST_FILE_NAME
    logger.info(f'Running the {config.scenario} scenario into {out_dir}.')
    try:
        with warnings.catch_warnings(record=True) as caught_warnings:
            warnings.simplefilter('always')
            distributions = _compute_distributions(config, manifest)
            failed = _marginals_failed(manifest.invariants)
            if not failed:
                start = time.perf_counter()
                for request in config.slices:
                    slice_ = slice_distribution(distributions[request.distribution], request.slice_spec)
                    manifest.slices[request.name] = _export_slice(request.name, slice_, config, writer)
                manifest.timings['export'] = time.perf_counter() - start
        warning_records = sorted(
            {(get_record_name(caught.category), str(caught.message)) for caught in caught_warnings})
        manifest.warnings = [{'type': type_, 'message': message} for type_, message in warning_records]
        for warning_record in manifest.warnings:
            logger.warning(f'{warning_record["type"]}: {warning_record["message"]}')
        if failed:
            manifest.status = 'invariant_failure'
        if config.outputs.manifest or failed:
            manifest_path.write_text(manifest.to_json(), encoding='utf-8')
            writer.paths.append(manifest_path)
        if failed:
            error_message = (f'Marginal residuals {manifest.invariants["marginal_residual_p_t"]:.3g} and '
                             f'{manifest.invariants["marginal_residual_x_omega"]:.3g} exceed the limit of '
                             f'{MARGINAL_RESIDUAL_LIMIT}.')
            raise InvariantCheckError(error_message)
    except InvariantCheckError:
        writer.remove_all(keep={manifest_path})
        raise
    except OutputError:
        writer.remove_all()
        raise
    except OSError as error:
        writer.remove_all()
        error_message = f'Could not write the run outputs to {out_dir}: {error}'
        raise OutputError(error_message) from error
    except Exception:
        writer.remove_all()
        raise
    manifest.output_paths = list(writer.paths)
    logger.info(f'Finished the {config.scenario} scenario with {len(manifest.slices)} slices.')
    return manifest


def _compute_distributions(config: RunConfig, manifest: RunManifest) -> dict[SliceDistribution, Dist4D]:
    start = time.perf_counter()
    x_axis, second_axis = config.grid.axes(config.beam.second_domain)
    field_ = build_beam(config.beam, x_axis, second_axis)
    if config.mask is not None:
        field_ = apply_mask(field_, config.mask, inverted=config.mask_inverted)
        if config.renormalize_mask:
            field_ = renormalize(field_)
    manifest.timings['build'] = time.perf_counter() - start
    start = time.perf_counter()
    wigner = wigner_4d(field_)
    kirkwood = kirkwood_4d(field_)
    manifest.timings['distributions'] = time.perf_counter() - start
    distributions = {SliceDistribution.WIGNER: wigner, SliceDistribution.KIRKWOOD: kirkwood}
    if config.scan.enabled:
        start = time.perf_counter()
        x_axis, w_axis = config.grid.position_frequency_axes(config.beam.second_domain)
        local_oscillator = build_lo_components(config.lo, x_axis, w_axis)
        grid = ScanGrid.conjugate_to(x_axis, w_axis, config.scan.f_over_k)
        scan = run_scan(local_oscillator, field_, grid, n_jobs=config.runtime.jobs,
                        memory_budget_bytes=config.runtime.memory_budget_bytes)
        distributions[SliceDistribution.RECONSTRUCTED] = invert_k_to_w(
            scan.to_kirkwood(), memory_budget_bytes=config.runtime.memory_budget_bytes)
        manifest.timings['scan_and_inversion'] = time.perf_counter() - start
    start = time.perf_counter()
    manifest.invariants = check_invariants(field_, wigner, kirkwood)
    manifest.timings['invariants'] = time.perf_counter() - start
    logger.info(f'Marginal residuals are {manifest.invariants["marginal_residual_p_t"]:.3g} and '
                f'{manifest.invariants["marginal_residual_x_omega"]:.3g}.')
    return distributions
