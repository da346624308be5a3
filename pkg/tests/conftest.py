import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "recint", deadline=None, max_examples=200,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("recint")

# Lines reported by test_acceptance.py, echoed at the end of the session.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng(request):
    return random.Random(request.node.nodeid)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
