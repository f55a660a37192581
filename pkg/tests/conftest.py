import pytest

from lcpseg.lexnet import DictionaryEntry, build_network
from lcpseg.resources import desk_resources
from lcpseg.significance import build_table


def entry(head, definition):
    return DictionaryEntry(head, tuple(definition.split()))


@pytest.fixture
def pet_net():
    return build_network([entry("cat", "small animal pet"),
                          entry("pet", "animal kept home"),
                          entry("animal", "living thing")], stopwords=())


@pytest.fixture
def chain_net():
    return build_network([entry("a", "b"), entry("b", "c"), entry("c", "")], stopwords=())


@pytest.fixture(scope="session")
def desk():
    return desk_resources()


@pytest.fixture
def flat_table():
    # single-count words all score 1
    return build_table({"x": 1, "y": 1})


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
