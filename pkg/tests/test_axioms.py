from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ntucore.axioms import (
    AXIOMS,
    CORE,
    EMPTY,
    FEASIBLE,
    IR,
    IR_PARETO,
    PARETO,
    SOLUTIONS,
    AxiomReport,
    Verdict,
    check_am,
    check_cssc,
    check_irec,
    check_nespg,
    check_po,
    check_ssc,
    check_wispc,
    check_wsc,
    cssc_premise,
    get_solution,
    non_ir_replay,
    planted_solution,
    revalidate,
    run_axioms,
    wc_probe,
)
from ntucore.game import GameError, new_game, replace_sets, subgame, submasks
from ntucore.harness import impoverish
from ntucore.reductions import epsilon_sequence, epsilon_x_game, ss_reduced, ws_reduced
from ntucore.regions import core_region, feasible_region, game_grid, ir_region, pareto_region, sample_points

from .conftest import games

P, V, NA = Verdict.PASS, Verdict.VIOLATED, Verdict.NOT_APPLICABLE


def test_registry():
    assert set(SOLUTIONS) == {"CORE", "PARETO", "IR", "IR_PARETO", "FEASIBLE", "EMPTY"}
    assert get_solution("core") is CORE
    with pytest.raises(ValueError, match="unknown solution"):
        get_solution("nucleolus")
    with pytest.raises(ValueError, match="unknown axiom"):
        run_axioms(CORE, new_game([0], {(0,): [(0,)]}), ["zz"])


def test_po(game_a):
    assert check_po(CORE, game_a).verdict is P
    r = check_po(FEASIBLE, game_a)
    assert r.verdict is V and r.witness["x"] == (0, 0)
    assert revalidate(r, FEASIBLE, game_a)
    assert check_po(EMPTY, game_a).verdict is P


def test_nespg(game_a, single5):
    assert check_nespg(CORE, single5).verdict is P
    assert sample_points(CORE(single5)) == [(5,)]
    r = check_nespg(EMPTY, single5)
    assert r.verdict is V and revalidate(r, EMPTY, single5)
    assert check_nespg(CORE, game_a).verdict is NA


def test_irec(game_a, three_player):
    assert check_irec(CORE, game_a).verdict is P
    x = (F(2), F(1), F(1))
    g = epsilon_x_game(three_player, x, 1)
    assert check_irec(CORE, g).verdict is P
    r = check_irec(EMPTY, game_a)
    assert r.verdict is V and revalidate(r, EMPTY, game_a)
    # premise fails on the original three-player game: pair cores are nonempty
    assert check_irec(CORE, three_player).verdict is NA


def test_ssc(game_a):
    assert check_ssc(CORE, game_a).verdict is P
    r = check_ssc(PARETO, game_a)
    assert r.verdict is V and r.sampled and revalidate(r, PARETO, game_a)
    # the hand-checked witness
    hand = AxiomReport("ssc", V, {"x": (1, -5), "coalition": 0b10})
    assert revalidate(hand, PARETO, game_a)
    assert PARETO(ss_reduced(game_a, 0b10, (1, -5))).contains((0,))


def test_ssc_restriction_note(game_a):
    r = check_ssc(IR, game_a)
    assert "restricted" in r.note


def test_cssc(game_a):
    assert cssc_premise(CORE, game_a, (1, 1)) is None
    assert cssc_premise(CORE, game_a, (1, -5)) == 0b10
    assert check_cssc(CORE, game_a).verdict is P
    assert check_cssc(EMPTY, game_a).verdict is P
    assert check_cssc(CORE, new_game([0], {(0,): [(1,)]})).verdict is NA


def test_wsc(game_a):
    assert check_wsc(CORE, game_a).verdict is P
    red = ws_reduced(game_a, 0b10, (1, 0))
    assert red.generators(0b10) == ((0,),)
    assert IR(red).contains((0,))
    # weaker than SSC: the SS witness is consistent under WS reduction
    assert PARETO.has(ws_reduced(game_a, 0b10, (1, -5)), (-5,))


def test_am(game_a):
    poorer = replace_sets(game_a, {0b10: [(-1,)]})
    assert check_am(CORE, game_a, poorer).verdict is P
    grown = core_region(poorer)
    assert core_region(game_a).issubset(grown) and grown.contains((1, F(-1, 2)))
    assert check_am(CORE, game_a, game_a).verdict is P
    assert check_am(IR, game_a, poorer).verdict is P
    changed = replace_sets(game_a, {0b11: [(2, 2)]})
    r = check_am(CORE, game_a, changed)
    assert r.verdict is NA and "grand" in r.note
    richer = replace_sets(game_a, {0b01: [(1,)]})
    assert check_am(CORE, game_a, richer).verdict is NA


def test_am_violation_revalidates(game_a):
    poorer = replace_sets(game_a, {0b10: [(-1,)]})
    r = check_am(EMPTY, game_a, poorer)
    assert r.verdict is P
    shrink = planted_solution(EMPTY, game_a, (1, 1))
    r = check_am(shrink, game_a, poorer)
    assert r.verdict is V and revalidate(r, shrink, game_a)


def test_wispc(game_a):
    assert check_wispc(CORE, game_a).verdict is P
    assert check_wispc(EMPTY, game_a).verdict is P
    r = check_wispc(PARETO, game_a)
    assert r.verdict is V and revalidate(r, PARETO, game_a)
    # S={1}: the subgame core is {0}, strictly above x_1 of the witness
    assert r.witness["coalition"] == 0b01 and r.witness["y"] == (0,)
    assert r.witness["x"][0] < 0


def test_wc_probe(game_a):
    seq = epsilon_sequence(game_a, (1, 1), 1, 4)
    r = wc_probe(seq, game_a, (1, 1), CORE)
    assert r.verdict is P
    assert r.witness["distances"] == (F(1, 2), F(1, 4), F(1, 8), F(1, 16))
    # one-element sequence equal to the limit: a plain membership check
    assert wc_probe([(game_a, (1, 1))], game_a, (1, 1), CORE).verdict is P
    assert wc_probe([(game_a, (1, 0))], game_a, (1, 1), CORE).verdict is P


def test_wc_probe_violation_and_errors(game_a):
    seq = epsilon_sequence(game_a, (1, 1), 1, 4)
    low = replace_sets(game_a, {0b11: [(F(1, 2), F(1, 2))]})
    r = wc_probe(seq, low, (1, 1), CORE)
    assert r.verdict is V and r.witness["k"] == 4 and revalidate(r, CORE, low)
    other = replace_sets(game_a, {0b01: [(1,)]})
    with pytest.raises(GameError, match="proper coalition"):
        wc_probe(seq, other, (1, 1), CORE)
    with pytest.raises(GameError):
        wc_probe([], game_a, (1, 1), CORE)
    assert wc_probe(seq, game_a, (1, 1), EMPTY).verdict is NA


def test_planted_solution(game_a):
    sol = planted_solution(CORE, game_a, (1, -5))
    assert sol.has(game_a, (1, -5)) and sol(game_a).contains((1, -5))
    red = ws_reduced(game_a, 0b10, (1, -5))
    assert sol(red).contains((-5,))
    assert sol(game_a) != CORE(game_a)


def test_non_ir_replay(game_a, three_player):
    r = non_ir_replay(PARETO, game_a, (1, -5))
    assert r.axiom == "wispc" and r.verdict is V and revalidate(r, PARETO, game_a)
    with pytest.raises(GameError, match="individually rational"):
        non_ir_replay(PARETO, game_a, (1, 1))
    with pytest.raises(GameError, match="not in the solution"):
        non_ir_replay(CORE, game_a, (1, -5))
    r = non_ir_replay(FEASIBLE, game_a, (-1, -1))
    assert r.axiom == "po" and revalidate(r, FEASIBLE, game_a)

    x = (F(4), F(3), F(-1))
    g = replace_sets(three_player, {0b111: [(4, 3, -1), (2, 2, 2)]})
    sol = planted_solution(CORE, g, x)
    r = non_ir_replay(sol, g, x)
    assert r.verdict is V
    assert revalidate(r, sol, r.witness.get("reduced_game", g))


@pytest.mark.parametrize("sol", list(SOLUTIONS.values()), ids=list(SOLUTIONS))
def test_solutions_within_feasible(sol, game_a, three_player):
    for g in (game_a, three_player):
        assert sol(g).issubset(feasible_region(g))


@settings(max_examples=40, deadline=None)
@given(games(max_players=3), st.integers(0, 10**6))
def test_core_passes_everything(g, seed):
    poorer = impoverish(g, seed)
    for r in run_axioms(CORE, g, AXIOMS, impoverished=poorer):
        assert r.verdict is not V, str(r)


@settings(max_examples=40, deadline=None)
@given(games(max_players=3))
def test_violations_revalidate(g):
    for sol in SOLUTIONS.values():
        for r in run_axioms(sol, g, ["po", "nespg", "irec", "ssc", "wsc", "cssc", "wispc"]):
            if r.violated:
                assert revalidate(r, sol, g), (sol.name, str(r))


@settings(max_examples=40, deadline=None)
@given(games(max_players=3))
def test_po_everywhere_and_ssc_imply_core(g):
    # PO has to hold on the subgames too: those are the SS reductions at
    # points whose x_S is still affordable
    subs = [subgame(g, m) for m in submasks(g.grand)]
    for sol in SOLUTIONS.values():
        if all(not check_po(sol, h).violated for h in subs) and not check_ssc(sol, g).violated:
            assert sol(g).issubset(core_region(g)), sol.name


def test_po_ssc_on_one_game_is_not_enough():
    # IR is the single Pareto point 0 here, the core is empty since {1,2}
    # can get (1,1); PO and SSC pass on the game, PO fails on the {1,2} subgame
    g = new_game(
        range(3),
        {1: [(0,)], 2: [(0,)], 4: [(0,)], 3: [(0, 0)], 5: [(0, 0)], 6: [(1, 1)], 7: [(0, 0, 0)]},
    )
    assert check_po(IR, g).verdict is P and check_ssc(IR, g).verdict is P
    assert core_region(g).is_empty() and not IR(g).is_empty()
    assert check_po(IR, subgame(g, 0b110)).violated


@settings(max_examples=40, deadline=None)
@given(games(max_players=3))
def test_non_ir_points_are_refuted(g):
    for sol in SOLUTIONS.values():
        outside = sol(g) - ir_region(g)
        for x in sample_points(outside, game_grid(g))[:4]:
            r = non_ir_replay(sol, g, x)
            assert r.violated and r.axiom in ("po", "wsc", "wispc")
            assert revalidate(r, sol, r.witness.get("reduced_game", g))
        if g.n <= 2:
            reps = run_axioms(sol, g, ["po", "irec", "wsc", "wispc"])
            if not any(r.violated for r in reps):
                assert sol(g).issubset(ir_region(g)), sol.name


def test_pareto_exceeds_core_so_ssc_fails(game_a):
    assert not pareto_region(game_a).issubset(core_region(game_a))
    assert check_ssc(PARETO, game_a).violated
    assert check_ssc(IR_PARETO, game_a).verdict is P
