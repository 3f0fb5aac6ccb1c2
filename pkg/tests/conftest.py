import json
from fractions import Fraction
from pathlib import Path

import pytest

from bitangents.corpus import fermat, trott
from bitangents.numeric.polynomials import MultiPoly
from bitangents.solver import compute_bitangents

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def oracle():
    return json.loads((FIXTURES / "oracle.json").read_text())


def poly_from_terms(rows, arity):
    return MultiPoly({tuple(r[:arity]): Fraction(r[arity]) for r in rows}, arity)


@pytest.fixture(scope="session")
def trott_curve():
    return trott()


@pytest.fixture(scope="session")
def fermat_curve():
    return fermat()


@pytest.fixture(scope="session")
def trott_bts(trott_curve):
    return compute_bitangents(trott_curve)


@pytest.fixture(scope="session")
def fermat_bts(fermat_curve):
    return compute_bitangents(fermat_curve)


# one summary line per acceptance criterion
_ACCEPTANCE: dict = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when != "call" and not (report.failed or report.skipped):
        return
    num = int(name.split("_")[2])
    ok = report.passed and not hasattr(report, "wasxfail")
    prev = _ACCEPTANCE.get(num, (True, []))
    _ACCEPTANCE[num] = (prev[0] and ok, prev[1] + [f"{name} {'ok' if ok else 'FAIL'}"])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        ok, names = _ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  ({', '.join(names)})")
