import logging

from tomophase.internal.errors import AliasingRisk, ConfigParseError, InvariantCheckError, OffsetClipping
from tomophase.internal.logging import (
    PACKAGE_LOGGER_NAME,
    camel_case_acronyms,
    create_default_formatter,
    get_record_name,
    set_up_default_logger,
)


def test_camel_case_acronyms():
    assert camel_case_acronyms('BCEntropy') == 'BcEntropy'
    assert camel_case_acronyms('KRDistribution') == 'KrDistribution'
    assert camel_case_acronyms('WignerLO') == 'WignerLo'
    assert camel_case_acronyms('Wigner') == 'Wigner'


def test_get_record_name():
    assert get_record_name(AliasingRisk) == 'aliasing_risk'
    assert get_record_name(OffsetClipping) == 'offset_clipping'
    assert get_record_name(InvariantCheckError) == 'invariant_check'
    assert get_record_name(ConfigParseError) == 'config_parse'


def test_default_formatter_names_the_package():
    assert create_default_formatter()._fmt.startswith('tomophase [')


def test_repeated_logger_setup_attaches_one_handler():
    package_logger = set_up_default_logger()
    handler_count = len(package_logger.handlers)
    package_logger = set_up_default_logger(logging.DEBUG)
    assert package_logger.name == PACKAGE_LOGGER_NAME
    assert len(package_logger.handlers) == handler_count
    assert package_logger.level == logging.DEBUG
    set_up_default_logger()
