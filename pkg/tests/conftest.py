from __future__ import annotations

import pytest

from kummer_genus.fq_arith import make_field
from kummer_genus.rt_poly import IrreduciblePoly, Poly

CRITERIA: dict[int, tuple[bool, str]] = {}


def record(number: int, passed: bool, detail: str) -> None:
    CRITERIA[number] = (passed, detail)
    print(f"criterion {number}: {'PASS' if passed else 'FAIL'} ({detail})")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        passed, detail = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def F5():
    return make_field(5)


@pytest.fixture(scope="session")
def F2():
    return make_field(2)


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2, (1, 0, 1))


def irreducible(F, *coeffs) -> IrreduciblePoly:
    return IrreduciblePoly(Poly.of(F, coeffs))
