import pytest

from qke.keys import keypair_from_exponents
from qke.modmath import DomainParams


class ScriptedRandom:
    """Replays fixed values from randrange; used to inject exponents."""

    def __init__(self, values):
        self.values = list(values)
        self.calls = 0

    def randrange(self, *args, **kwargs):
        self.calls += 1
        return self.values.pop(0)


@pytest.fixture
def worked_params():
    return DomainParams(23, 5)


@pytest.fixture
def alice(worked_params):
    return keypair_from_exponents(worked_params, 3, 6, 4)


@pytest.fixture
def bob(worked_params):
    return keypair_from_exponents(worked_params, 7, 8, 2)


_criteria = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    ok = call.excinfo is None
    prev = _criteria.get(number, (title, True))
    _criteria[number] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")
