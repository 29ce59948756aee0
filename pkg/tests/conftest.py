import os
import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from ballotlab import Ballot, Candidate, Profile  # noqa: E402
from ballotlab.io import load_fixture  # noqa: E402


def make_profile(rankings, cutoffs=None, weights=None, roster="ABC"):
    return Profile.from_rankings(rankings, cutoffs=cutoffs, roster=list(roster), weights=weights)


@pytest.fixture(scope="session")
def table1():
    return load_fixture("table1")


@pytest.fixture(scope="session")
def table2():
    return load_fixture("table2")


@pytest.fixture(scope="session")
def table3():
    return load_fixture("table3")


@pytest.fixture(scope="session")
def table4():
    return load_fixture("table4")


@pytest.fixture(scope="session")
def unanimous():
    return make_profile(["ABC"] * 3)


weights = st.fractions(min_value=0, max_value=20, max_denominator=12)


@st.composite
def profiles(draw, max_candidates=8, max_ballots=50, positive=True):
    n = draw(st.integers(2, max_candidates))
    ids = [f"c{i}" for i in range(n)]
    count = draw(st.integers(1, max_ballots))
    ballots = []
    for i in range(count):
        ranking = draw(st.permutations(ids))
        w = draw(weights.filter(lambda x: x > 0) if positive else weights)
        ballots.append(Ballot(ranking=ranking, cutoff=draw(st.integers(0, n)), voter_id=f"v{i}", weight=w))
    if sum(b.weight for b in ballots) == 0:
        ballots[0] = ballots[0].with_weight(Fraction(1))
    return Profile(roster=tuple(Candidate(c) for c in ids), ballots=tuple(ballots))


# Acceptance criteria record a line here; printed after the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
