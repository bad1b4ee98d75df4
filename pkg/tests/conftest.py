import contextlib

import pytest

from sigkit import backend

_ACCEPTANCE = {}


@pytest.fixture(params=backend.available())
def each_backend(request):
    with backend.using(request.param):
        yield request.param


@pytest.fixture
def criterion():
    """Record one acceptance criterion's outcome for the end-of-run summary."""

    @contextlib.contextmanager
    def record(number, description):
        try:
            yield
        except BaseException as exc:
            _ACCEPTANCE[number] = ("FAIL", description, str(exc).splitlines()[0] if str(exc) else type(exc).__name__)
            raise
        else:
            _ACCEPTANCE.setdefault(number, ("PASS", description, ""))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, description, detail = _ACCEPTANCE[number]
        line = f"[{status}] criterion {number:>2}: {description}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
