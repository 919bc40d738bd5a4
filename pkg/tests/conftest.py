from __future__ import annotations

from pathlib import Path

import pytest

from glat.biclosed import enumerate_bic
from glat.quiver_core import load_quiver

QUIVERS = Path(__file__).resolve().parent.parent / "quivers"
DESK = ("two_cycle", "a2_path", "square")


def quiver(name: str):
    return load_quiver(QUIVERS / f"{name}.json")


@pytest.fixture(scope="session")
def two_cycle():
    return quiver("two_cycle")


@pytest.fixture(scope="session")
def a2():
    return quiver("a2_path")


@pytest.fixture(scope="session")
def square():
    return quiver("square")


@pytest.fixture(scope="session")
def point():
    return quiver("point")


@pytest.fixture(scope="session", params=DESK)
def desk_bic(request):
    return enumerate_bic(quiver(request.param))


# one PASS/FAIL line per acceptance criterion, collected from test_acceptance.py
_criteria: dict[str, bool] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _criteria[name] = _criteria.get(name, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda n: int(n.split("_")[2])):
        terminalreporter.write_line(f"{'PASS' if _criteria[name] else 'FAIL'}  {name}")
