"""Configuration for the pytest tests."""
from pathlib import Path

import matplotlib as mpl
import pytest

mpl.use("Agg")  # Figures are only ever written to files.

END_TO_END_TEST_DIRECTORY = Path(__file__).parent / "tests" / "end_to_end_tests"


def pytest_addoption(parser):
    """Adds options to skip the scenario runs and the slower dense grid tests."""
    parser.addoption("--exclude-integration", action="store_true", default=False,
                     help="Skip the end to end scenario and command line runs")
    parser.addoption("--exclude-slow", action="store_true", default=False, help="Skip the slow tests")


def pytest_configure(config):
    """Registers the markers."""
    config.addinivalue_line("markers", "integration: A full scenario or command line run writing output files.")
    config.addinivalue_line("markers", "slow: A test with several runs or large dense grids.")


def pytest_collection_modifyitems(config, items):
    """Marks the end to end tests as integration tests and applies the exclusion options."""
    integration_skip_mark = pytest.mark.skip(reason="Integration tests were excluded.")
    slow_skip_mark = pytest.mark.skip(reason="Slow tests were excluded.")
    for item in items:
        if END_TO_END_TEST_DIRECTORY in Path(item.fspath).parents:
            item.add_marker(pytest.mark.integration)
        if "integration" in item.keywords and config.getoption("--exclude-integration"):
            item.add_marker(integration_skip_mark)
        if "slow" in item.keywords and config.getoption("--exclude-slow"):
            item.add_marker(slow_skip_mark)
