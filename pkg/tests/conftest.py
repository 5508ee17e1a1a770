import os
import time

import pytest

from ramanujan_pi.prime_core import sieve_to
from ramanujan_pi.ramanujan import build_table, build_table_for_cap

DESK_CAP = 110_000_000  # large enough that n = 9 is not truncated in the m-schedule

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES = []
TIMINGS = {}


def pytest_collection_modifyitems(config, items):
    if os.environ.get("RAMANUJAN_PI_HEAVY"):
        return
    skip = pytest.mark.skip(reason="set RAMANUJAN_PI_HEAVY=1 to run")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def store_1e6():
    return sieve_to(10**6)


@pytest.fixture(scope="session")
def small():
    """(store, table) for n <= 10^5."""
    t0 = time.perf_counter()
    out = build_table(10**5)
    TIMINGS["small"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def desk():
    """(store, table) holding every R_n <= 1.1e8."""
    t0 = time.perf_counter()
    out = build_table_for_cap(DESK_CAP)
    TIMINGS["desk"] = time.perf_counter() - t0
    return out
