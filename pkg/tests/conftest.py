import random
import subprocess
import sys

import pytest

from intervalmonge.interval import IntervalMatrix, RealMatrix

ACCEPTANCE_LINES = []


@pytest.fixture
def small_strong():
    return IntervalMatrix([[0, 5], [0, 0]], [[5, 5], [8, 0]])


@pytest.fixture
def wide_4x4():
    return IntervalMatrix(
        [[3, 10, 17, 0], [2, 7, 0, 17], [2, 0, 10, 14], [0, 3, 5, 7]],
        [[1000, 120, 20, 24], [20, 9, 12, 85], [5, 6, 14, 100], [1, 6, 21, 1000]],
    )


@pytest.fixture
def wide_member():
    return RealMatrix([[3, 10, 17, 24], [2, 7, 12, 17], [2, 6, 10, 14], [1, 3, 5, 7]])


@pytest.fixture
def rng(request):
    # stable per-test seed
    return random.Random(request.node.nodeid)


@pytest.fixture
def run_cli():
    def run(args, stdin=None):
        return subprocess.run(
            [sys.executable, "-m", "intervalmonge", *args],
            input=stdin,
            capture_output=True,
            text=True,
            timeout=60,
        )

    return run


@pytest.fixture
def record():
    def add(criterion, passed, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")

    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
