import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from quiverkac.quiver import Quiver  # noqa: E402


QUIVERS = {
    "point": Quiver.single_vertex(),
    "A2": Quiver.path(2),
    "A3": Quiver.path(3),
    "kronecker": Quiver.kronecker(),
    "kronecker3": Quiver.kronecker(3),
    "triangle": Quiver.cycle(3),
}


@pytest.fixture(params=sorted(QUIVERS))
def loop_free_quiver(request):
    return QUIVERS[request.param]


@pytest.fixture
def quiver_file(tmp_path):
    def write(text, name="q.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
