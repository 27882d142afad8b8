"""
Shared fixtures for the weyl-toric test suite
"""

import pytest

from toric.budget import Budget
from toric.sections.registry import SectionRegistry
from utils.logger import reset_logger


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help='run the long acceptance checks')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def fresh_singletons():
    """Every test sees a new registry and logger"""
    SectionRegistry.reset_instance()
    reset_logger()
    yield
    SectionRegistry.reset_instance()
    reset_logger()


@pytest.fixture
def fast_budget():
    return Budget()


@pytest.fixture
def full_budget():
    return Budget.from_config({}, 'full')


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    """Run inside a temporary directory so logs/ and reports/ stay out of the tree"""
    monkeypatch.chdir(tmp_path)
    return tmp_path
