import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from graphlimits.graph import build_graph  # noqa: E402


def cycle_graph(n, d=2):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)], d)


def path_graph(n, d=2):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)], d)


def complete_graph(n):
    return build_graph(n, [(a, b) for a in range(n) for b in range(a + 1, n)], n - 1)


def star_graph(leaves):
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)], leaves)


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def k4():
    return complete_graph(4)


_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        verdict = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        _criteria[num] = (title, verdict)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, verdict = _criteria[num]
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {title}")
