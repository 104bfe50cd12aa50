"""Pointwise decision procedures on finitely generated games."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .game import (
    NTUGame,
    Point,
    as_mask,
    b_vector,
    fmt_coalition,
    leq,
    popcount,
    strictly_less,
)


class DominationWitness(NamedTuple):
    coalition: int
    generator: Point


@dataclass(frozen=True)
class C2Violation:
    """A boundary point ``x`` of V(S) and a point ``y <= x, y != x`` that is
    still on the boundary, i.e. not interior."""

    coalition: int
    x: Point
    y: Point

    def __str__(self) -> str:
        return f"S={fmt_coalition(self.coalition)} x={tuple(map(str, self.x))} y={tuple(map(str, self.y))}"


def contains(game: NTUGame, coalition, x: Sequence) -> bool:
    """x in V(S)."""
    mask = as_mask(coalition)
    x = game.check_point(x, mask)
    return any(leq(x, g) for g in game.generators(mask))


def interior_contains(game: NTUGame, coalition, x: Sequence) -> bool:
    # interior of a downward hull = union of open down-orthants of generators
    mask = as_mask(coalition)
    x = game.check_point(x, mask)
    return any(strictly_less(x, g) for g in game.generators(mask))


def on_boundary(game: NTUGame, coalition, x: Sequence) -> bool:
    return contains(game, coalition, x) and not interior_contains(game, coalition, x)


def dominates(game: NTUGame, y: Sequence, x: Sequence, coalition) -> bool:
    """y dominates x via S: y_S in V(S) and y_i > x_i for all i in S.

    ``x`` and ``y`` are aligned with ``game.players``; coordinates outside S
    are ignored.
    """
    mask = as_mask(coalition)
    y = game.check_point(y)
    x = game.check_point(x)
    ys, xs = game.restrict(y, mask), game.restrict(x, mask)
    return strictly_less(xs, ys) and contains(game, mask, ys)


def find_domination(game: NTUGame, x: Sequence) -> Optional[DominationWitness]:
    """First (coalition, generator) with generator >> x_S, scanning coalitions by
    ascending bitmask and generators in canonical order."""
    x = game.check_point(x)
    for mask, gens in game.table:
        xs = game.restrict(x, mask)
        for g in gens:
            if strictly_less(xs, g):
                return DominationWitness(mask, g)
    return None


def in_core(game: NTUGame, x: Sequence) -> bool:
    return contains(game, game.grand, x) and find_domination(game, x) is None


def is_pareto(game: NTUGame, x: Sequence) -> bool:
    return contains(game, game.grand, x) and not interior_contains(game, game.grand, x)


def is_individually_rational(game: NTUGame, x: Sequence) -> bool:
    x = game.check_point(x)
    return contains(game, game.grand, x) and leq(b_vector(game), x)


def find_c2_violation(game: NTUGame) -> Optional[C2Violation]:
    """Witness that non-levelness fails, or None.

    For the first coalition with at least two members, take its first
    generator ``g`` as the boundary point and lower its last coordinate by a
    step small enough that no other generator strictly dominates the result.
    """
    for mask, gens in game.table:
        if popcount(mask) < 2:
            continue
        g = gens[0]
        step = 1
        # generators strictly above g off the last coordinate would swallow a big step
        for h in gens[1:]:
            if all(h[j] > g[j] for j in range(len(g) - 1)):
                step = min(step, g[-1] - h[-1])
        y = g[:-1] + (g[-1] - step,)
        return C2Violation(mask, g, y)
    return None


def is_c2_violation(game: NTUGame, v: C2Violation) -> bool:
    """Independent re-check of a C2 witness."""
    return (
        on_boundary(game, v.coalition, v.x)
        and leq(v.y, v.x)
        and v.y != v.x
        and on_boundary(game, v.coalition, v.y)
    )
