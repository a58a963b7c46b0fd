import itertools

import pytest

from stsflow import designs

# filled in by test_acceptance; printed once at the end of the run
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.rstrip("abc")), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


def pair_cover_counts(n, triples):
    """Independent oracle: how often each pair of 1..n is covered."""
    counts = {pair: 0 for pair in itertools.combinations(range(1, n + 1), 2)}
    for t in triples:
        for pair in itertools.combinations(sorted(t), 2):
            counts[pair] += 1
    return counts


@pytest.fixture(scope="session")
def fano():
    return designs.fano()


@pytest.fixture(scope="session")
def sts9():
    return designs.affine_plane_9()


@pytest.fixture(scope="session")
def h15():
    return designs.hamming_sts(4)


@pytest.fixture(scope="session", params=["sts13a", "sts13b"])
def sts13(request):
    return designs.load_catalog(request.param)
