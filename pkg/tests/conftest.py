import pytest
from hypothesis import HealthCheck, settings

from fusionkit import corpus
from fusionkit.fusion import fusion_from_group

settings.register_profile(
    "repro", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="also run tests marked slow")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: takes more than ~10 s")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_SYSTEMS: dict = {}


def system(name: str, p: int):
    """Cached ``F_S(G)`` for a corpus group."""
    key = (name, p)
    if key not in _SYSTEMS:
        _SYSTEMS[key] = fusion_from_group(corpus.load(name), p)
    return _SYSTEMS[key]


@pytest.fixture
def load():
    return corpus.load


@pytest.fixture
def fsys():
    return system


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
