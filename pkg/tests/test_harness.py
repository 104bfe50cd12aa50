import json
from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ntucore.axioms import CORE, EMPTY, PARETO, am_premise, check_am, revalidate
from ntucore.game import GameError, new_game, replace_sets
from ntucore.harness import (
    GenConfig,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    counterexample_search,
    derive_seed,
    games_with_core,
    impoverish,
    random_game,
)
from ntucore.io import dumps_game, game_from_json, loads_game
from ntucore.regions import core_region, pareto_region


def test_config_validation():
    with pytest.raises(ValueError):
        GenConfig(n_players=0)
    with pytest.raises(ValueError):
        GenConfig(max_generators_per_coalition=7)
    with pytest.raises(ValueError):
        GenConfig(value_range=(2, 1))
    with pytest.raises(ValueError):
        GenConfig(denominator_bound=0)
    assert GenConfig(value_range=("1/2", 3)).value_range == (F(1, 2), F(3))


def test_random_game_deterministic():
    cfg = GenConfig(seed=42, n_players=3)
    assert dumps_game(random_game(cfg)) == dumps_game(random_game(cfg))
    assert random_game(cfg) != random_game(replace(cfg, seed=43))
    one = random_game(GenConfig(seed=1, n_players=1))
    assert len(one.table) == 1


def test_random_game_respects_bounds():
    cfg = GenConfig(seed=3, n_players=3, max_generators_per_coalition=2, value_range=(0, 2), denominator_bound=3)
    for i in range(1000):
        g = random_game(replace(cfg, seed=derive_seed(7, i)))
        # the validating constructor accepts the table unchanged
        assert new_game(g.players, dict(g.table)) == g
        for mask, gens in g.table:
            assert 1 <= len(gens) <= 2
            for p in gens:
                assert all(0 <= v <= 2 and v.denominator <= 3 for v in p)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**64 - 1), st.integers(1, 5), st.integers(1, 6))
def test_serialization_round_trip(seed, n, k):
    g = random_game(GenConfig(seed=seed, n_players=n, max_generators_per_coalition=k, denominator_bound=64))
    text = dumps_game(g)
    assert loads_game(text) == g
    assert dumps_game(loads_game(text)) == text
    assert game_from_json(json.loads(text)) == g


def test_impoverish(game_a):
    assert impoverish(game_a, 0, max_shift=0) == game_a
    for seed in range(50):
        poorer = impoverish(game_a, seed)
        assert poorer.generators(0b11) == game_a.generators(0b11)
        assert am_premise(game_a, poorer) is None
    hand = replace_sets(game_a, {0b10: [(-1,)]})
    assert am_premise(game_a, hand) is None
    assert am_premise(game_a, replace_sets(game_a, {0b11: [(2, 2)]})) is not None


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_impoverish_gives_valid_am_pairs(seed):
    g = random_game(GenConfig(seed=seed, n_players=3))
    poorer = impoverish(g, seed)
    assert am_premise(g, poorer) is None
    assert not check_am(CORE, g, poorer).violated


def test_theorem1_game_a(game_a, single5):
    res = check_theorem1(game_a)
    assert res.passed, [str(c) for c in res.failures()]
    claim = next(c for c in res.claims if c.name == "outside-core-refuted-PARETO")
    assert "ssc" in claim.detail and "violated" in claim.detail
    res = check_theorem1(single5)
    assert res.passed
    assert any(c.name == "single-player-core-is-b" and c.passed for c in res.claims)


def test_theorem1_exclusion_needs_subgame_po():
    g = new_game(
        range(3),
        {1: [(0,)], 2: [(0,)], 4: [(0,)], 3: [(0, 0)], 5: [(0, 0)], 6: [(1, 1)], 7: [(0, 0, 0)]},
    )
    res = check_theorem1(g)
    assert res.passed
    claim = next(c for c in res.claims if c.name == "outside-core-refuted-IR")
    assert "subgame" in claim.detail


def test_theorem2_game_a(game_a):
    res = check_theorem2(game_a, (1, 1), 1)
    assert res.passed, [str(c) for c in res.failures()]
    claim = next(c for c in res.claims if c.name == "eps-x-core-is-x-eps")
    assert claim.detail == "{3/2} x {3/2}"
    dist = next(c for c in res.claims if c.name == "hausdorff-sequence")
    assert dist.detail == "distances 1/2, 1/4, 1/8, 1/16, 1/32, 1/64"
    with pytest.raises(GameError, match="not in the core"):
        check_theorem2(game_a, (0, 0), 1)
    with pytest.raises(GameError):
        check_theorem2(game_a, (1, 1), 0)


def test_theorem3_game_a(game_a):
    res = check_theorem3(game_a, (1, 1), F(1, 2))
    assert res.passed, [str(c) for c in res.failures()]
    pareto = next(c for c in res.claims if c.name == "non-ir-refuted-PARETO")
    assert "wispc" in pareto.detail
    feas = next(c for c in res.claims if c.name == "non-ir-refuted-FEASIBLE")
    assert feas.passed


def test_failed_claims_carry_bundles(game_a):
    res = check_theorem1(game_a)
    res.add("synthetic", False, "x", None, {"game": "g"})
    assert not res.passed
    assert all(c.bundle is not None for c in res.failures())
    json.dumps(res.to_json())


def test_theorem_batches_small():
    cfg = GenConfig(seed=5, n_players=3, size_bias=1)
    for i in range(10):
        g = random_game(replace(cfg, seed=derive_seed(5, i)))
        assert check_theorem1(g).passed
    for g, x in games_with_core(cfg, 5):
        assert check_theorem2(g, x, F(1, 2)).passed
        assert check_theorem3(g, x, 1).passed


def test_search_pareto_ssc():
    rep = counterexample_search(PARETO, ["ssc"], GenConfig(seed=0, n_players=2), 100)
    assert rep.found
    assert all(v.revalidated for v in rep.violations)


def test_search_core_clean():
    rep = counterexample_search(CORE, ["po", "nespg", "irec", "ssc", "wsc", "wispc", "am"],
                                GenConfig(seed=11, n_players=3, size_bias=1), 30)
    assert not rep.found
    assert rep.verdicts["po"]["pass"] == 30


def test_search_empty_irec():
    rep = counterexample_search(EMPTY, ["irec"], GenConfig(seed=2, n_players=2), 20, stop_first=True)
    assert rep.found and rep.violations[0].axiom == "irec"
    assert len(rep.violations) == 1


def test_search_reproducible():
    cfg = GenConfig(seed=9, n_players=2)
    a = counterexample_search(PARETO, ["po", "ssc"], cfg, 15)
    b = counterexample_search(PARETO, ["po", "ssc"], cfg, 15)
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())
    # bundles replay without the seed
    for v in a.violations:
        g = game_from_json(v.bundle["game"])
        assert revalidate(v.report, PARETO, g)
    with pytest.raises(ValueError):
        counterexample_search(PARETO, ["nope"], cfg, 1)


def test_games_exceeding_core_listed():
    cfg = GenConfig(seed=4, n_players=2)
    rep = counterexample_search(PARETO, ["po"], cfg, 20)
    for t in rep.games_exceeding_core:
        g = random_game(replace(cfg, seed=derive_seed(cfg.seed, t)))
        assert not pareto_region(g).issubset(core_region(g))
