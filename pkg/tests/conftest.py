import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from closeness import Graph, loads  # noqa: E402

P3_TEXT = "0 1 1.0\n1 2 1.0\n"


@pytest.fixture
def p3():
    return loads(P3_TEXT)


@pytest.fixture
def k4():
    return Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(0, 1, 5.0), (1, 2, 1.0), (0, 2, 1.0)])


@pytest.fixture
def star5():
    return Graph.from_edges(5, [(0, i) for i in range(1, 5)])


@pytest.fixture
def p3_file(tmp_path):
    path = tmp_path / "p3.txt"
    path.write_text(P3_TEXT)
    return path


_acceptance = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    notes = "; ".join(f"{k}={v}" for k, v in item.user_properties)
    _acceptance.append((marker.args[0], marker.args[1], rep.outcome, rep.duration, notes))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome, duration, notes in sorted(_acceptance):
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"[{status}] {number}. {title} ({duration:.1f}s)"
        if notes:
            line += f"  {notes}"
        terminalreporter.write_line(line)
