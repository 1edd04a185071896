import time

import pytest

_REPORT = {}


class AcceptanceRecorder:
    """Collects one pass/fail line per acceptance criterion."""

    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.notes = []
        self.start = time.perf_counter()

    def note(self, text):
        self.notes.append(text)

    @property
    def elapsed(self):
        return time.perf_counter() - self.start

    def finish(self, passed, detail):
        _REPORT[self.number] = (self.title, passed, detail, self.elapsed, list(self.notes))
        return passed


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    rec = AcceptanceRecorder(number, title)
    yield rec
    if number not in _REPORT:
        _REPORT[number] = (title, False, "did not complete", rec.elapsed, rec.notes)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _REPORT:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_REPORT):
        title, passed, detail, elapsed, notes = _REPORT[number]
        tr.write_line(f"[{'PASS' if passed else 'FAIL'}] {number:2d}. {title}: {detail} ({elapsed:.2f}s)")
        for n in notes:
            tr.write_line(f"         note: {n}")
