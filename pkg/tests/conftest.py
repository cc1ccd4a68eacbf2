from __future__ import annotations

from contextlib import contextmanager

import pytest

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def acceptance():
    """Record the outcome of an acceptance criterion for the end-of-run summary."""

    @contextmanager
    def record(number: int, title: str):
        try:
            yield
        except BaseException as e:
            ACCEPTANCE[number] = (title, False, f"{type(e).__name__}: {e}".splitlines()[0][:120])
            raise
        ACCEPTANCE[number] = (title, True, "")

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, why = ACCEPTANCE[n]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  ({why})" if why else ""))
