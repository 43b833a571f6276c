import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from suspkit import corpus  # noqa: E402
from suspkit.freeaut import FreeAutomorphism  # noqa: E402


@pytest.fixture(scope="session")
def fib():
    return FreeAutomorphism.from_strings("ab", ["b", "a b"])


@pytest.fixture(scope="session")
def splittings():
    return {name: corpus.load_splitting(name) for name in corpus.ALL_SPLITTINGS}


@pytest.fixture(scope="session")
def centralizers(splittings):
    return {name: corpus.load_centralizers(sp, name) for name, sp in splittings.items()}


def pytest_terminal_summary(terminalreporter):
    from support import ACCEPTANCE

    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
