import sys

import pytest

from hermring.genring import GeneratorLedger
from hermring.igusa import IgusaLedger


@pytest.fixture(scope="session")
def ledger3():
    return GeneratorLedger(3).build_all()


@pytest.fixture(scope="session")
def igusa3(ledger3):
    return IgusaLedger(ledger3).build_all()


@pytest.fixture(scope="session")
def ledger4():
    return GeneratorLedger(4).build_all()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
