import pytest
from hypothesis import settings

from refcob.fgl import make_context

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def ctx2():
    return make_context(2)


@pytest.fixture(scope="session")
def ctx3():
    return make_context(3)


@pytest.fixture(scope="session")
def ctx4():
    return make_context(4)


@pytest.fixture(scope="session")
def ctx6():
    return make_context(6)


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, config):
    if config.acceptance_lines:
        terminalreporter.section("acceptance")
        for text in config.acceptance_lines:
            terminalreporter.write_line(text)
