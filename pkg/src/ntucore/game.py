"""Finitely generated NTU games.

A payoff set V(S) is stored as a finite antichain of generator points; the
set itself is the downward hull ``{y : y <= g for some generator g}``.

Players are non-negative integer ids. Coalitions are int bitmasks with bit
``p`` set for player ``p``, so subgames keep the labels of their parent.
Payoff vectors over a coalition are tuples of ``Fraction`` aligned with the
coalition's members in ascending order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

Point = tuple  # tuple[Fraction, ...]
GeneratorSet = tuple  # tuple[Point, ...], normalized
CoalitionLike = Union[int, Iterable[int]]


class GameError(ValueError):
    """Raised when a game (or an input to a game constructor) is malformed."""


def mask_of(players: Iterable[int]) -> int:
    m = 0
    for p in players:
        if p < 0:
            raise GameError(f"player ids must be non-negative, got {p}")
        m |= 1 << p
    return m


def members(mask: int) -> tuple:
    out = []
    p = 0
    while mask:
        if mask & 1:
            out.append(p)
        mask >>= 1
        p += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int, proper: bool = False) -> list:
    """Nonempty submasks of ``mask`` in ascending numeric order."""
    subs = []
    s = mask
    while s:
        subs.append(s)
        s = (s - 1) & mask
    subs.reverse()
    if proper:
        subs.pop()
    return subs


def as_mask(coalition: CoalitionLike) -> int:
    if isinstance(coalition, int):
        return coalition
    return mask_of(coalition)


def fmt_coalition(mask: int) -> str:
    return "{" + ",".join(str(p) for p in members(mask)) + "}"


def to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise GameError(f"float {v!r} is not an exact rational; pass a Fraction, int or 'p/q' string")
    try:
        return Fraction(v)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise GameError(f"not a rational: {v!r}") from e


def as_point(values: Iterable) -> Point:
    return tuple(to_fraction(v) for v in values)


def leq(a: Sequence, b: Sequence) -> bool:
    return all(x <= y for x, y in zip(a, b))


def strictly_less(a: Sequence, b: Sequence) -> bool:
    """a << b: strict in every coordinate."""
    return all(x < y for x, y in zip(a, b))


def restrict(x: Sequence, players: Sequence[int], mask: int) -> Point:
    """Coordinates of ``x`` (aligned with ``players``) belonging to ``mask``."""
    return tuple(v for p, v in zip(players, x) if mask >> p & 1)


def normalize_generators(raw: Iterable[Sequence]) -> GeneratorSet:
    """Canonical antichain with the same downward hull as ``raw``.

    Drops duplicates and every point that is componentwise below another
    point; the survivors are returned in lexicographic order.
    """
    pts = sorted({as_point(p) for p in raw})
    if not pts:
        raise GameError("generator set must be nonempty")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise GameError("generator points have mixed dimensions")
    # after sorting, a point can only be dominated by a later one
    keep = []
    for i, p in enumerate(pts):
        if not any(leq(p, q) for q in pts[i + 1:]):
            keep.append(p)
    return tuple(keep)


@dataclass(frozen=True)
class NTUGame:
    """An NTU game in finitely generated form.

    ``table`` holds ``(coalition mask, generators)`` pairs sorted by mask,
    one for every nonempty coalition of ``players``. Use :func:`new_game`
    rather than building this directly.
    """

    players: tuple
    table: tuple

    @cached_property
    def _sets(self) -> dict:
        return dict(self.table)

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def grand(self) -> int:
        return mask_of(self.players)

    def generators(self, coalition: CoalitionLike) -> GeneratorSet:
        mask = as_mask(coalition)
        try:
            return self._sets[mask]
        except KeyError:
            raise GameError(f"coalition {fmt_coalition(mask)} is not a nonempty subset of {self.players}") from None

    def coalitions(self) -> list:
        return [m for m, _ in self.table]

    def restrict(self, x: Sequence, coalition: CoalitionLike) -> Point:
        return restrict(x, self.players, as_mask(coalition))

    def check_point(self, x: Sequence, coalition: CoalitionLike | None = None) -> Point:
        mask = self.grand if coalition is None else as_mask(coalition)
        x = as_point(x)
        if len(x) != popcount(mask):
            raise GameError(f"point of dimension {len(x)} does not match coalition {fmt_coalition(mask)}")
        return x

    def __repr__(self) -> str:
        body = ", ".join(f"{fmt_coalition(m)}: {[tuple(str(v) for v in g) for g in gens]}" for m, gens in self.table)
        return f"NTUGame(players={self.players}, {body})"


def new_game(players: Iterable[int], assignments: Mapping) -> NTUGame:
    """Build and validate a game.

    ``assignments`` maps each nonempty coalition (a bitmask or an iterable of
    player ids) to a finite nonempty collection of points over that coalition.
    """
    players = tuple(players)
    if not players:
        raise GameError("a game needs at least one player")
    if len(set(players)) != len(players):
        raise GameError(f"duplicate player ids in {players}")
    players = tuple(sorted(players))
    grand = mask_of(players)

    sets = {}
    for coalition, raw in assignments.items():
        mask = as_mask(coalition)
        if mask == 0:
            raise GameError("the empty coalition has no payoff set (V(empty) is empty by omission)")
        if mask & ~grand:
            raise GameError(f"coalition {fmt_coalition(mask)} contains players outside {players}")
        if mask in sets:
            raise GameError(f"coalition {fmt_coalition(mask)} assigned twice")
        raw = list(raw)
        if not raw:
            raise GameError(f"coalition {fmt_coalition(mask)}: empty generator set")
        k = popcount(mask)
        for p in raw:
            if len(p) != k:
                raise GameError(f"coalition {fmt_coalition(mask)}: point {tuple(p)} has dimension {len(p)}, expected {k}")
        sets[mask] = normalize_generators(raw)

    missing = [m for m in submasks(grand) if m not in sets]
    if missing:
        raise GameError("missing payoff sets for coalitions " + ", ".join(fmt_coalition(m) for m in missing))
    return NTUGame(players, tuple(sorted(sets.items())))


def subgame(game: NTUGame, coalition: CoalitionLike) -> NTUGame:
    """The game restricted to the players of ``coalition``; V_T(S) = V(S)."""
    mask = as_mask(coalition)
    if mask == 0 or mask & ~game.grand:
        raise GameError(f"subgame coalition {fmt_coalition(mask)} must be a nonempty subset of {game.players}")
    if mask == game.grand:
        return game
    return NTUGame(members(mask), tuple((m, g) for m, g in game.table if m & ~mask == 0))


def replace_sets(game: NTUGame, updates: Mapping[int, Iterable[Sequence]]) -> NTUGame:
    """Copy of ``game`` with the listed coalitions' generator sets replaced."""
    sets = dict(game.table)
    for mask, raw in updates.items():
        if mask not in sets:
            raise GameError(f"coalition {fmt_coalition(mask)} is not in the game")
        gens = normalize_generators(raw)
        if len(gens[0]) != popcount(mask):
            raise GameError(f"coalition {fmt_coalition(mask)}: dimension mismatch")
        sets[mask] = gens
    return NTUGame(game.players, tuple(sorted(sets.items())))


def b_vector(game: NTUGame) -> Point:
    """Best singleton payoff b_j for each player, aligned with ``game.players``."""
    return tuple(game.generators(1 << p)[0][0] for p in game.players)
