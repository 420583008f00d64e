import time

import pytest

from d0lsync.classify import sweep

SWEEP_KS = (2, 3, 4, 5)
_cache = {}


def sweep_reports(k):
    if k not in _cache:
        t0 = time.perf_counter()
        _cache[k] = (sweep(k), time.perf_counter() - t0)
    return _cache[k][0]


def sweep_seconds():
    return sum(t for _, t in _cache.values())


@pytest.fixture(scope="session")
def all_reports():
    return {k: sweep_reports(k) for k in SWEEP_KS}


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
