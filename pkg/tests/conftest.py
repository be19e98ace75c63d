import pytest
from hypothesis import settings

from diamond_bounds import ChannelConfig

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_CRITERIA: list[str] = []


@pytest.fixture
def sym_channel():
    return ChannelConfig(a=0.9, b=0.9, p1=10.0, p2=10.0, c1=2.0, c2=2.0)


@pytest.fixture
def anti_channel():
    return ChannelConfig(a=0.9, b=-0.9, p1=10.0, p2=10.0, c1=2.0, c2=2.0)


@pytest.fixture(scope="session")
def criterion_log():
    return _CRITERIA


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
