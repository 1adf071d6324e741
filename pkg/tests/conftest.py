"""Records per-criterion verdicts from test_acceptance.py and prints them
in the terminal summary, one line per criterion."""

import sys

import pytest

_VERDICTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Call as criterion(number, passed, detail) before asserting, so a
    failed assertion still leaves its verdict in the summary."""

    def record(number: int, passed: bool, detail: str = ""):
        _VERDICTS[number] = (bool(passed), detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        passed, detail = _VERDICTS[number]
        word = "PASS" if passed else "FAIL"
        line = f"criterion {number}: {word}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
    sys.stdout.flush()
