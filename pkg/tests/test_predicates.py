import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ntucore.game import GameError, new_game
from ntucore.predicates import (
    contains,
    dominates,
    find_c2_violation,
    find_domination,
    in_core,
    interior_contains,
    is_c2_violation,
    is_individually_rational,
    is_pareto,
    on_boundary,
)

from .conftest import games, points


def brute_domination(game, x):
    """Enumerate coalitions by player subsets, sorted by bitmask value."""
    subsets = [c for r in range(1, game.n + 1) for c in itertools.combinations(game.players, r)]
    subsets.sort(key=lambda c: sum(1 << p for p in c))
    for c in subsets:
        xs = tuple(x[game.players.index(p)] for p in c)
        for g in game.generators(c):
            if all(gi > xi for gi, xi in zip(g, xs)):
                return sum(1 << p for p in c), g
    return None


@pytest.mark.parametrize("x, expected", [((1, 1), True), ((1, 2), False), ((-5, 1), True)])
def test_contains(game_a, x, expected):
    assert contains(game_a, 0b11, x) is expected


@pytest.mark.parametrize("s, x, expected", [(0b11, (0, 0), True), (0b11, (1, 0), False), (0b01, (-1,), True)])
def test_interior(game_a, s, x, expected):
    assert interior_contains(game_a, s, x) is expected


def test_contains_dimension_mismatch(game_a):
    with pytest.raises(GameError):
        contains(game_a, 0b11, (1,))


def test_dominates(game_a):
    assert dominates(game_a, (1, 1), (0, 0), 0b11)
    assert not dominates(game_a, (1, 1), (1, 0), 0b11)
    # coordinate of y outside S is irrelevant
    assert dominates(game_a, (0, 99), (-5, 7), 0b01)


@pytest.mark.parametrize(
    "x, expected",
    [((0, 0), (0b11, (1, 1))), ((1, 0), None), ((1, -5), (0b10, (0,)))],
)
def test_find_domination_examples(game_a, x, expected):
    assert brute_domination(game_a, x) == expected
    got = find_domination(game_a, x)
    assert (None if got is None else tuple(got)) == expected


@given(games(), st.data())
def test_find_domination_matches_brute_force(g, data):
    x = data.draw(points(g.n))
    got = find_domination(g, x)
    assert (None if got is None else tuple(got)) == brute_domination(g, x)


@pytest.mark.parametrize("x, expected", [((1, 1), True), ((1, 0), True), ((0, 0), False)])
def test_in_core(game_a, x, expected):
    assert in_core(game_a, x) is expected


@pytest.mark.parametrize("x, expected", [((1, 0), True), ((1, -5), True), ((0, 0), False)])
def test_is_pareto(game_a, x, expected):
    assert is_pareto(game_a, x) is expected


@pytest.mark.parametrize("x, expected", [((1, 0), True), ((1, -5), False), ((1, 1), True)])
def test_is_ir(game_a, x, expected):
    assert is_individually_rational(game_a, x) is expected


@given(games(), st.data())
def test_predicate_implications(g, data):
    x = data.draw(points(g.n))
    if in_core(g, x):
        assert is_pareto(g, x)
        assert is_individually_rational(g, x)
    for mask in g.coalitions():
        y = data.draw(points(bin(mask).count("1")))
        if interior_contains(g, mask, y):
            assert contains(g, mask, y)
        if contains(g, mask, y):
            lower = tuple(v - 1 for v in y)
            assert contains(g, mask, lower)
    assert not dominates(g, x, x, g.grand)


def test_c2_game_a(game_a):
    v = find_c2_violation(game_a)
    assert (v.coalition, v.x, v.y) == (0b11, (1, 1), (1, 0))
    assert on_boundary(game_a, 0b11, v.y)
    assert is_c2_violation(game_a, v)


def test_c2_single_player(single5):
    assert find_c2_violation(single5) is None


def test_c2_step_shrinks_when_needed():
    # (0,1) would be strictly below (1/2,3/2), i.e. interior
    g = new_game([0, 1], {(0,): [(0,)], (1,): [(0,)], (0, 1): [(0, 2), (F(1, 2), F(3, 2))]})
    assert interior_contains(g, 0b11, (0, 1))
    v = find_c2_violation(g)
    assert v.y == (0, F(3, 2))
    assert is_c2_violation(g, v)


@given(games(max_players=3))
def test_c2_found_whenever_multi_player(g):
    v = find_c2_violation(g)
    if g.n == 1:
        assert v is None
    else:
        assert v is not None and is_c2_violation(g, v)
