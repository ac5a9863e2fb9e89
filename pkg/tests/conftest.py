import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tribrackets import (  # noqa: E402
    SearchConfig,
    alexander_tribracket,
    cyclic_group,
    dehn_tribracket,
    enumerate_tribrackets,
    symmetric_group,
    unit_pairs,
)
from tribrackets.diagram import load_pd_file  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@lru_cache(maxsize=None)
def corpus():
    """Horizontal tribrackets used across the invariance tests."""
    out = [alexander_tribracket(s) for n in range(2, 10) for s in unit_pairs(n)]
    out += [dehn_tribracket(cyclic_group(n), f"D(Z{n})") for n in range(2, 10)]
    out.append(dehn_tribracket(symmetric_group(3), "D(S3)"))
    for n in (2, 3):
        for i, X in enumerate(enumerate_tribrackets(SearchConfig(n))):
            X.name = f"E{n}.{i}"
            out.append(X)
    return tuple(out)


def fixture_diagram(name):
    from tribrackets import regions

    return regions(load_pd_file(FIXTURES / f"{name}.txt"))


@pytest.fixture(scope="session")
def tribracket_corpus():
    return corpus()


# -- acceptance report --------------------------------------------------------

def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
