"""Derived games: secession reductions and the epsilon perturbations used to
show the core is contained in any solution with the continuity axioms."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .game import (
    GameError,
    NTUGame,
    Point,
    as_mask,
    fmt_coalition,
    members,
    normalize_generators,
    to_fraction,
)
from .predicates import contains, is_pareto


def _check_epsilon(eps) -> Fraction:
    eps = to_fraction(eps)
    if eps <= 0:
        raise GameError(f"epsilon must be strictly positive, got {eps}")
    return eps


def _reduction_args(game: NTUGame, coalition, x, require_pareto: bool):
    mask = as_mask(coalition)
    if mask == 0 or mask & ~game.grand or mask == game.grand:
        raise GameError(f"reduction needs a nonempty proper coalition of {game.players}, got {fmt_coalition(mask)}")
    x = game.check_point(x)
    if require_pareto and not is_pareto(game, x):
        raise GameError(f"point {tuple(map(str, x))} is not Pareto efficient; reduced games are defined for x in X(N,V)")
    return mask, x


def _reduced(game: NTUGame, mask: int, top) -> NTUGame:
    table = tuple((m, top if m == mask else g) for m, g in game.table if m & ~mask == 0)
    return NTUGame(members(mask), table)


def ss_reduced(game: NTUGame, coalition, x: Sequence, require_pareto: bool = True) -> NTUGame:
    """Strong secession reduced game on S with respect to x.

    S keeps V(S) when it can still afford x_S, otherwise it is pinned to the
    downward hull of x_S. Smaller coalitions keep their sets.
    """
    mask, x = _reduction_args(game, coalition, x, require_pareto)
    xs = game.restrict(x, mask)
    top = game.generators(mask) if contains(game, mask, xs) else (xs,)
    return _reduced(game, mask, top)


def ws_reduced(game: NTUGame, coalition, x: Sequence, require_pareto: bool = True) -> NTUGame:
    """Weak secession reduced game: S is always pinned to the hull of x_S."""
    mask, x = _reduction_args(game, coalition, x, require_pareto)
    return _reduced(game, mask, (game.restrict(x, mask),))


def x_epsilon(x: Sequence, eps) -> Point:
    eps = _check_epsilon(eps)
    shift = eps / len(x)
    return tuple(to_fraction(v) + shift for v in x)


def epsilon_game(game: NTUGame, x: Sequence, eps) -> NTUGame:
    """V(N) enlarged by the down-orthant of x + eps/|N|; other coalitions unchanged."""
    x = game.check_point(x)
    top = normalize_generators(game.generators(game.grand) + (x_epsilon(x, eps),))
    return NTUGame(game.players, tuple((m, top if m == game.grand else g) for m, g in game.table))


def epsilon_x_game(game: NTUGame, x: Sequence, eps) -> NTUGame:
    """epsilon_game with every singleton capped at x_i + eps/|N|."""
    x = game.check_point(x)
    base = epsilon_game(game, x, eps)
    xe = x_epsilon(x, eps)
    caps = {1 << p: ((v,),) for p, v in zip(game.players, xe)}
    return NTUGame(game.players, tuple((m, caps.get(m, g)) for m, g in base.table))


def epsilon_schedule(eps0, k: int) -> list:
    eps0 = _check_epsilon(eps0)
    if k < 1:
        raise GameError("sequence length must be at least 1")
    return [eps0 / 2 ** j for j in range(k)]


def epsilon_sequence(game: NTUGame, x: Sequence, eps0, k: int) -> list:
    """[(V^eps_j, x^eps_j)] for the halving schedule eps_j = eps0 / 2**(j-1)."""
    x = game.check_point(x)
    return [(epsilon_game(game, x, e), x_epsilon(x, e)) for e in epsilon_schedule(eps0, k)]
