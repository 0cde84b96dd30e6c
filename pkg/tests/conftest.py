import pytest

from simcon.enumeration import EnumerationConfig, count_classes

ACCEPTANCE_LINES: list = []

CORE_CELLS = {
    (2, 2): 16, (2, 3): 68, (2, 4): 312, (2, 5): 1560, (2, 6): 8528,
    (2, 7): 50864, (3, 2): 152, (3, 3): 5312, (4, 2): 2326, (5, 2): 52132,
}


@pytest.fixture(scope="session")
def core_reports():
    return {cell: count_classes(EnumerationConfig(*cell)) for cell in CORE_CELLS}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
