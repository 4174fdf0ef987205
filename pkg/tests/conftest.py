from fractions import Fraction

import pytest

from runsgf.models import PatternSpec, ProbModel

GOLDEN_SPEC = PatternSpec((2, 2, 3))
GOLDEN_PROBS = ProbModel((Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)))


@pytest.fixture
def golden_spec():
    return GOLDEN_SPEC


@pytest.fixture
def golden_probs():
    return GOLDEN_PROBS


ACCEPTANCE_LINES: list[str] = []


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.outcome == "passed" else "FAIL"
        ACCEPTANCE_LINES.append(f"{status}  criterion {crit}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
