import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE: dict[float, tuple[bool, str]] = {}
SUITE_LIMIT_SECONDS = 300.0
_start = time.perf_counter()


@pytest.fixture
def criterion():
    """Record a pass/fail line for an acceptance criterion, keyed by its number."""

    def record(number: float, passed: bool, detail: str):
        ACCEPTANCE[number] = (passed, detail)
        assert passed, f"criterion {number}: {detail}"

    return record


def _label(n: float) -> str:
    # 12.1 .. 12.5 stand for the lettered parts 12a .. 12e
    if n == int(n):
        return f"{int(n)}"
    return f"{int(n)}{'abcde'[round((n - int(n)) * 10) - 1]}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    elapsed = time.perf_counter() - _start
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[n]
        tr.write_line(f"criterion {_label(n)} {'PASS' if passed else 'FAIL'}: {detail}")
    ok = elapsed < SUITE_LIMIT_SECONDS
    tr.write_line(f"suite runtime {elapsed:.1f} s (limit {SUITE_LIMIT_SECONDS:.0f} s): {'PASS' if ok else 'FAIL'}")


def pytest_sessionfinish(session, exitstatus):
    if time.perf_counter() - _start >= SUITE_LIMIT_SECONDS and ACCEPTANCE:
        session.exitstatus = 1
