from __future__ import annotations

import pytest

from stgen.codes import StGenCode, StGenParams, base_code
from stgen.gf2 import BitMatrix


@pytest.fixture
def toy_code() -> StGenCode:
    """v=2, k_1=k_2=n_1=n_2=1 with every block equal to (1): G = [[1,0,1,1],[0,1,0,1]]."""
    params = StGenParams(1, 1, 1, 1, base_code("(2,1)1"), 2, seed=0)
    return StGenCode(params, BitMatrix.from_rows(["1"]), [BitMatrix.from_rows(["1"])])


@pytest.fixture
def single_code() -> StGenCode:
    """G = [1 1]."""
    params = StGenParams(1, 1, 1, 1, base_code("(2,1)1"), 1, seed=0)
    return StGenCode(params, BitMatrix.from_rows(["1"]), [])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        ok, detail = RESULTS[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
