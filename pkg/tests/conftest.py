import pytest

from matroiddet.exact import RationalMatrix
from matroiddet.io import load_fixture, matrix_from_json
from matroiddet.matroid import Matroid

BANANA_ROWS = [[-1, 1, 0, 0], [-1, 0, 1, 0], [-1, 0, 0, 1]]
BRAID_ROWS = [[1, 1, 1, 0, 0, 0], [-1, 0, 0, 1, 1, 0], [0, -1, 0, -1, 0, 1]]


@pytest.fixture
def banana_A():
    return RationalMatrix.from_rows(BANANA_ROWS)


@pytest.fixture
def braid_A():
    return RationalMatrix.from_rows(BRAID_ROWS)


@pytest.fixture
def banana(banana_A):
    return Matroid(banana_A)


@pytest.fixture
def braid(braid_A):
    return Matroid(braid_A)


@pytest.fixture
def fixture_matrix():
    return lambda name: matrix_from_json(load_fixture(name))


# -- one summary line per acceptance criterion ---------------------------------

_criteria: dict[int, list[str]] = {}
_titles: dict[int, str] = {}
_node_numbers: dict[str, int] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            num, title = m.args
            _criteria.setdefault(num, [])
            _titles[num] = title


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    num = _node_numbers.get(report.nodeid)
    if num is not None:
        _criteria[num].append(report.outcome)


def pytest_itemcollected(item):
    m = item.get_closest_marker("criterion")
    if m:
        _node_numbers[item.nodeid] = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        outcomes = _criteria[num]
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "passed" for o in outcomes):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {status:7s} {_titles[num]}")
