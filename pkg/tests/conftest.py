from pathlib import Path

import pytest

from qcuml.qasm import load, parse
from qcuml.transform import circuit_to_uml

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def teleport_text() -> str:
    return (FIXTURES / "teleport.qasm").read_text()


@pytest.fixture(scope="session")
def teleport_program(teleport_text):
    return parse(teleport_text)


@pytest.fixture(scope="session")
def teleport(teleport_text):
    return load(teleport_text, "teleport")


@pytest.fixture(scope="session")
def teleport_model(teleport):
    return circuit_to_uml(teleport)


def pytest_terminal_summary(terminalreporter):
    results = {}
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
                results[report.nodeid.split("::")[-1]] = outcome
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(results, key=lambda n: int(n.split("_")[2])):
        terminalreporter.write_line(f"{'PASS' if results[name] == 'passed' else 'FAIL'}  {name}")
