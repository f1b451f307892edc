"""
Logger setup for command line runs and the naming of warning and error records.
"""
from __future__ import annotations

import datetime
import logging
import re
import sys

import stringcase

PACKAGE_LOGGER_NAME = 'tomophase'

_default_handler: logging.Handler | None = None


def create_default_formatter() -> logging.Formatter:
    return logging.Formatter(f'{PACKAGE_LOGGER_NAME} [{{asctime}} {{levelname}} {{name}}] {{message}}', style='{')


def set_up_default_logger(level: int = logging.INFO) -> logging.Logger:
    """
    Attaches a stdout handler to the package logger and logs uncaught exceptions. Repeated calls only change the
    level.

    :param level: The level of the package logger.
    :return: The package logger.
    """
    global _default_handler  # noqa PLW0603
    package_logger = logging.getLogger(PACKAGE_LOGGER_NAME)
    if _default_handler is None:
        _default_handler = logging.StreamHandler(sys.stdout)
        _default_handler.setLevel(logging.DEBUG)
        _default_handler.setFormatter(create_default_formatter())
        package_logger.addHandler(_default_handler)
        package_logger.propagate = False
        sys.excepthook = excepthook
    package_logger.setLevel(level)
    return package_logger


def excepthook(exc_type, exc_value, exc_traceback):
    package_logger = logging.getLogger(PACKAGE_LOGGER_NAME)
    package_logger.critical(f'Uncaught exception at {datetime.datetime.now().astimezone()}:')
    if _default_handler is not None:
        _default_handler.flush()
    sys.__excepthook__(exc_type, exc_value, exc_traceback)


def get_record_name(record_type: type) -> str:
    """
    Converts a warning or error class into the snake case key used for it in run records, e.g.
    `InvariantCheckError` -> `invariant_check`.

    :param record_type: The warning or error class.
    :return: The record name.
    """
    record_name = stringcase.snakecase(camel_case_acronyms(record_type.__name__))
    return record_name.removesuffix('_error')


def camel_case_acronyms(string: str) -> str:
    """
    Lowers all but the first letter of each acronym so snake casing splits it as one word, e.g. `KRDistribution`
    -> `KrDistribution`.
    """
    def fold_acronym(match: re.Match) -> str:
        return ''.join(stringcase.capitalcase(group.lower()) for group in match.groups() if group is not None)

    return re.sub(r'([A-Z]{2,})([A-Z][a-z])|([A-Z]{2,})', fold_acronym, string)
