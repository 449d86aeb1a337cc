import functools
import math

import numpy as np
import pytest

from maxpoly.pentagon.cases import case_max

R_MIN, R_MAX = 1.0 / math.sqrt(2.0), 1.0


@functools.lru_cache(maxsize=None)
def cached_case_max(tag: str, r: float) -> float:
    """case_max at the default budget, shared across test modules."""
    return case_max(tag, r)[0]


def r_grid(count: int) -> np.ndarray:
    return np.linspace(R_MIN, R_MAX, count)


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> str:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
