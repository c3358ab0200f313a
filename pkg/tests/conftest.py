import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA = {}


class CriterionReport:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.details = []
        _CRITERIA[number] = (title, False, self.details)

    def note(self, text):
        self.details.append(text)

    def check(self, ok, text):
        self.note(text)
        assert ok, text

    def passed(self):
        _CRITERIA[self.number] = (self.title, True, self.details)


@pytest.fixture
def criterion():
    return CriterionReport


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, details = _CRITERIA[number]
        line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}"
        if details:
            line += ": " + "; ".join(details)
        terminalreporter.write_line(line)
