import sys

import pytest
from hypothesis import settings

from coxchar.coxgroup import coxeter_group

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False,
        help="also run the long full rank-6 Orlik-Solomon traces",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="long-running; use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        terminalreporter.write_line(results[key])


@pytest.fixture(scope="session")
def box():
    """Cached group boxes by name, e.g. ``box("B5")``."""
    return coxeter_group
