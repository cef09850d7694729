import pytest

from lpbn.parser import parse_program

P1_TEXT = "p :- not q.\nq :- not p.\nr :- q.\n"
HIDDEN_LOOP_TEXT = "a :- c.\nb :- c.\nc :- not a, not b.\n"

CURATED = {
    "p1": P1_TEXT,
    "hidden_loop": HIDDEN_LOOP_TEXT,
    "odd_self_loop": "p :- not p.\n",
    "facts": "p.\nq.\nr :- p, q.\n",
    "pos_loop": "p :- q.\nq :- p.\n",
    "pos_loop_with_exit": "p :- q.\nq :- p.\nq :- not r.\nr :- not q.\n",
    "even_neg_loop": "a :- not b.\nb :- not a.\n",
    "three_odd": "a :- not b.\nb :- not c.\nc :- not a.\n",
    "empty": "",
}


@pytest.fixture
def p1():
    return parse_program(P1_TEXT)


@pytest.fixture
def hidden_loop():
    return parse_program(HIDDEN_LOOP_TEXT)


_acceptance: list[str] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _acceptance.append(f"{'PASS' if report.passed else 'FAIL'}  {name}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance:
            terminalreporter.write_line(line)
