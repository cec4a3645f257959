import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from slimlat.suites import Context  # noqa: E402

settings.register_profile("slimlat", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("slimlat")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ctx():
    return Context(seed=0)


@pytest.fixture(scope="session")
def universe12(ctx):
    return ctx.universe(12)


@pytest.fixture(scope="session")
def universe10(ctx, universe12):
    return ctx.universe(10)


@pytest.fixture(scope="session")
def rect14(ctx):
    return ctx.universe(14, "rectangular")


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
