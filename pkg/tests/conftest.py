import os

import pytest
from hypothesis import HealthCheck, settings

from drinfeld_slopes.algebra import FieldSpec
from drinfeld_slopes.level import LevelSpec, build_quotient

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def F3():
    return FieldSpec(3)


@pytest.fixture(scope="session")
def gamma1_t(F3):
    """Gamma_1(t) over F_3; its cache keeps the Hecke matrices across tests."""
    return build_quotient(LevelSpec.gamma1(F3))


@pytest.fixture(scope="session")
def gamma0p_t2(F3):
    return build_quotient(LevelSpec.gamma0p(F3, None, 2))


ACCEPTANCE_LINES: dict = {}


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""
    number = request.node.get_closest_marker("criterion").args[0]
    state = {"detail": ""}

    def note(detail):
        state["detail"] = detail

    yield note
    ok = request.node.rep_call.passed if hasattr(request.node, "rep_call") else False
    ACCEPTANCE_LINES[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {state['detail']}"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
