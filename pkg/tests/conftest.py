from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

_acceptance_lines: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow; use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for the acceptance summary, then assert."""

    def record(criterion: str, ok: bool, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'}  {criterion}" + (f"  ({detail})" if detail else "")
        _acceptance_lines.append(line)
        print(line)
        assert ok, line

    return record


def load_catalog(n: int) -> list[str]:
    return (DATA / f"connected{n}.g6").read_text().split()
