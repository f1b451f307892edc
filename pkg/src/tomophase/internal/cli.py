"""
The `simulate` command line entry point.
"""
from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import Any

from tomophase.internal.errors import (
    ConfigParseError,
    ConfigValidationError,
    InvariantCheckError,
    OutputError,
    TomophaseError,
)
from tomophase.internal.logging import set_up_default_logger
from tomophase.internal.run_configuration import Scenario, parse_config
from tomophase.internal.run_session import run

logger = logging.getLogger(__name__)

EXIT_SUCCESS = 0
EXIT_RUN_FAILURE = 1
EXIT_CONFIGURATION_FAILURE = 2


def create_argument_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='simulate',
        description='Computes Wigner and Kirkwood-Rihaczek phase-space distributions of a masked ultrashort beam.')
    parser.add_argument('scenario', choices=[str(scenario) for scenario in Scenario])
    parser.add_argument('--config', type=Path, default=None,
                        help='A TOML configuration. Required for the custom scenario.')
    parser.add_argument('--out', type=Path, required=True, help='The output directory.')
    parser.add_argument('--with-scan', action='store_true',
                        help='Simulate the heterodyne scan and export reconstructed slices.')
    parser.add_argument('--renormalize-mask', action='store_true',
                        help='Rescale the masked field to unit norm.')
    parser.add_argument('--grid', type=int, default=None, help='The number of samples per axis.')
    parser.add_argument('--heatmaps', action='store_true', help='Write graymap heatmaps of each slice.')
    parser.add_argument('--figures', action='store_true', help='Write PNG figures of each slice.')
    parser.add_argument('--jobs', type=int, default=None, help='The number of workers for dense scans.')
    parser.add_argument('--verbose', action='store_true', help='Log debug messages.')
    return parser


def overrides_from_arguments(arguments: argparse.Namespace) -> dict[str, Any]:
    """
    Collects the command line flags as configuration overrides. Flags left unset do not override the document.
    """
    overrides: dict[str, Any] = {}
    if arguments.with_scan:
        overrides.setdefault('scan', {})['enabled'] = True
    if arguments.renormalize_mask:
        overrides['renormalize_mask'] = True
    if arguments.grid is not None:
        overrides['grid'] = {'points': arguments.grid}
    if arguments.heatmaps:
        overrides.setdefault('outputs', {})['heatmap'] = True
    if arguments.figures:
        overrides.setdefault('outputs', {})['figures'] = True
    if arguments.jobs is not None:
        overrides['runtime'] = {'jobs': arguments.jobs}
    return overrides


def main(argv: list[str] | None = None) -> int:
    """
    Runs the command line interface.

    :param argv: The arguments, excluding the program name. Defaults to `sys.argv[1:]`.
    :return: The exit code.
    """
    arguments = create_argument_parser().parse_args(argv)
    set_up_default_logger(logging.DEBUG if arguments.verbose else logging.INFO)
    scenario = Scenario(arguments.scenario)
    if scenario == Scenario.CUSTOM and arguments.config is None:
        logger.error('The custom scenario requires --config.')
        return EXIT_CONFIGURATION_FAILURE
    try:
        text = '' if arguments.config is None else arguments.config.read_text(encoding='utf-8')
    except OSError as error:
        logger.error(f'Could not read the configuration {arguments.config}: {error}')
        return EXIT_CONFIGURATION_FAILURE
    try:
        configuration = parse_config(text, scenario, overrides_from_arguments(arguments))
    except ConfigParseError as error:
        location = '' if error.line is None else f' (line {error.line})'
        logger.error(f'{error}{location}')
        return EXIT_CONFIGURATION_FAILURE
    except ConfigValidationError as error:
        logger.error(f'{error} [{error.invariant}]')
        return EXIT_CONFIGURATION_FAILURE
    configuration = dataclasses.replace(configuration, out_dir=arguments.out)
    try:
        run(configuration)
    except InvariantCheckError as error:
        logger.error(f'Invariant check failed: {error}')
        return EXIT_RUN_FAILURE
    except OutputError as error:
        logger.error(f'{error}')
        return EXIT_RUN_FAILURE
    except TomophaseError as error:
        logger.error(f'{type(error).__name__}: {error}')
        return EXIT_RUN_FAILURE
    return EXIT_SUCCESS


if __name__ == '__main__':
    sys.exit(main())
