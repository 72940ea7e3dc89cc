from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from rocnpmle.counts import CategoryCounts, random_counts

# Radiologist 5, 140 micron images: first row diseased, second non-diseased.
RAD5_M = (10, 8, 4, 0, 4, 3, 4, 2, 4, 1)
RAD5_N = (33, 17, 6, 6, 5, 1, 0, 3, 1, 0)

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def rad5() -> CategoryCounts:
    return CategoryCounts(RAD5_M, RAD5_N)


@pytest.fixture(scope="session")
def random_instances() -> list[CategoryCounts]:
    """1000 random instances, k <= 8, per-category counts <= 20."""
    rng = np.random.default_rng(12345)
    return [random_counts(rng, max_k=8, max_count=20) for _ in range(1000)]


@st.composite
def category_counts(draw, max_k: int = 8, max_count: int = 20):
    k = draw(st.integers(1, max_k))
    m = draw(st.lists(st.integers(0, max_count), min_size=k, max_size=k))
    n = draw(st.lists(st.integers(0, max_count), min_size=k, max_size=k))
    if sum(m) == 0:
        m[draw(st.integers(0, k - 1))] = 1
    if sum(n) == 0:
        n[draw(st.integers(0, k - 1))] = 1
    return CategoryCounts(tuple(m), tuple(n))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
