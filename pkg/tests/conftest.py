import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from contextuality import catalog  # noqa: E402
from contextuality.polytope import nc_polytope_facets  # noqa: E402


@pytest.fixture(scope="session")
def chsh_facets():
    """H-representation of the (2,2,2) local polytope; takes a few seconds."""
    return nc_polytope_facets(catalog.chsh_scenario())


_RESULTS = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_RESULTS] = []


@pytest.fixture
def acceptance_log(request):
    """Append one summary line per acceptance criterion."""
    lines = request.config.stash[_RESULTS]

    def record(line):
        print(line)
        lines.append(line)
    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash[_RESULTS]
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
