from fractions import Fraction as F

import pytest
from hypothesis import strategies as st

from ntucore.game import new_game
from ntucore.regions import INF, Interval

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def game_a():
    # the running two-player example; players 1 and 2 are ids 0 and 1
    return new_game([0, 1], {(0,): [(0,)], (1,): [(0,)], (0, 1): [(1, 1)]})


@pytest.fixture
def single5():
    return new_game([0], {(0,): [(5,)]})


@pytest.fixture
def three_player():
    return new_game(
        [0, 1, 2],
        {
            (0,): [(0,)],
            (1,): [(0,)],
            (2,): [(0,)],
            (0, 1): [(1, 1)],
            (0, 2): [(1, 1)],
            (1, 2): [(1, 1)],
            (0, 1, 2): [(2, 2, 2)],
        },
    )


small_rationals = st.builds(F, st.integers(-6, 6), st.sampled_from([1, 2]))


@st.composite
def points(draw, dim):
    return tuple(draw(small_rationals) for _ in range(dim))


@st.composite
def games(draw, max_players=3, max_gens=3):
    n = draw(st.integers(1, max_players))
    table = {}
    for mask in range(1, 1 << n):
        k = bin(mask).count("1")
        table[mask] = draw(st.lists(points(k), min_size=1, max_size=max_gens))
    return new_game(range(n), table)


@st.composite
def intervals(draw):
    lo = draw(st.one_of(st.just(-INF), st.integers(-3, 3)))
    hi = draw(st.one_of(st.just(INF), st.integers(-3, 3)))
    if lo != -INF and hi != INF and lo > hi:
        lo, hi = hi, lo
    lc = draw(st.booleans()) and lo != -INF
    hc = draw(st.booleans()) and hi != INF
    if lo == hi:
        lc = hc = True
    lo = lo if lo == -INF else F(lo)
    hi = hi if hi == INF else F(hi)
    return Interval(lo, lc, hi, hc)


@st.composite
def box_lists(draw, dim, max_boxes=3):
    return draw(st.lists(st.tuples(*[intervals() for _ in range(dim)]), max_size=max_boxes))
