"""Shared fixtures: two worked markets and their hand-checked facts."""

from __future__ import annotations

import pytest

from stable_core import Instance, Matching, Vertex, parse_instance

# A 3x3 market with exactly two stable matchings.  Reducing it strands five
# pairs, four of which form a cycle.
TWO_STABLE_TEXT = """\
3
w1: f2 f1 f3
w2: f2 f3 f1
w3: f1 f2 f3
f1: w1 w2 w3
f2: w1 w2 w3
f3: w1 w3 w2
"""

# A 3x3 market whose preferences contain cycles and yet the stable matching is
# unique; reduction collapses it to the diagonal in five pivot steps.
UNIQUE_CYCLIC_TEXT = """\
3
w1: f3 f1 f2
w2: f1 f2 f3
w3: f1 f3 f2
f1: w1 w2 w3
f2: w3 w1 w2
f3: w3 w2 w1
"""

# Hand-checked facts about the two markets (0-based ids).
TWO_STABLE_MATCHINGS = ((1, 2, 0), (1, 0, 2))  # worker-optimal, firm-optimal
TWO_STABLE_SURVIVORS = frozenset(
    Vertex(w, f) for w, f in [(0, 1), (1, 0), (1, 2), (2, 0), (2, 2)]
)
TWO_STABLE_FIRST_ROUND = frozenset(
    Vertex(w, f) for w, f in [(0, 0), (0, 2), (1, 1), (2, 1)]
)
UNIQUE_CYCLIC_MATCHING = (0, 1, 2)
UNIQUE_CYCLIC_TRACE = (
    ((1, 0), {(2, 0)}),
    ((2, 2), {(0, 2), (1, 2)}),
    ((0, 0), {(1, 0)}),
    ((0, 0), {(0, 1)}),
    ((2, 2), {(2, 1)}),
)
UNIQUE_CYCLIC_ROUNDS = (
    {(0, 1), (2, 0), (2, 1)},
    {(0, 2), (1, 2)},
    {(1, 0)},
)

# The seven 2x2 markets whose unique stable matching pairs w1-f1 and w2-f2,
# as (worker rows, firm rows).
SEVEN_IDENTITY_MARKETS = (
    (((0, 1), (0, 1)), ((0, 1), (0, 1))),
    (((0, 1), (1, 0)), ((0, 1), (0, 1))),
    (((0, 1), (0, 1)), ((0, 1), (1, 0))),
    (((0, 1), (1, 0)), ((0, 1), (1, 0))),
    (((0, 1), (1, 0)), ((1, 0), (1, 0))),
    (((1, 0), (1, 0)), ((1, 0), (1, 0))),
    (((1, 0), (1, 0)), ((0, 1), (1, 0))),
)

# n=3 market where nothing is ever deletable: everyone's favourite partner
# ranks them last.
NO_DELETIONS_MARKET = (
    ((0, 1, 2), (1, 2, 0), (2, 0, 1)),
    ((1, 2, 0), (2, 0, 1), (0, 1, 2)),
)

# n=3 market where worker i and firm i are mutual favourites; one round leaves
# only the diagonal.
MUTUAL_FAVOURITES_MARKET = (
    ((0, 1, 2), (1, 2, 0), (2, 0, 1)),
    ((0, 1, 2), (1, 2, 0), (2, 0, 1)),
)


def make_instance(worker_rows, firm_rows) -> Instance:
    return Instance.from_prefs(worker_rows, firm_rows)


def make_matching(assignment) -> Matching:
    return Matching.from_worker_assignment(assignment)


@pytest.fixture(scope="session")
def two_stable_market() -> Instance:
    return parse_instance(TWO_STABLE_TEXT)


@pytest.fixture(scope="session")
def unique_cyclic_market() -> Instance:
    return parse_instance(UNIQUE_CYCLIC_TEXT)


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance PASS/FAIL lines where they are easy to find."""
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
