"""JSON game files and report serialization.

Game file::

    {"players": [0, 1],
     "coalitions": [{"members": [0], "generators": [["0"]]},
                    {"members": [0, 1], "generators": [["1", "1/2"]]}]}

Rationals are JSON integers or decimal/"p/q" strings. Floats are rejected.
"""
from __future__ import annotations

import enum
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any

from .game import GameError, NTUGame, mask_of, members, new_game


def parse_rational(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise GameError(f"rational must be an integer or a 'p/q' string, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise GameError(f"cannot parse rational {v!r}") from None
    raise GameError(f"rational must be an integer or a 'p/q' string, got {v!r}")


def format_rational(v) -> str:
    if v == math.inf:
        return "inf"
    if v == -math.inf:
        return "-inf"
    return str(Fraction(v))


def parse_point(text: str) -> tuple:
    """'1,1/2,-3' -> (1, 1/2, -3)."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise GameError(f"empty point {text!r}")
    return tuple(parse_rational(p) for p in parts)


def parse_coalition(text: str) -> int:
    try:
        ids = [int(p) for p in text.replace(" ", "").split(",") if p]
    except ValueError:
        raise GameError(f"coalition must be comma separated player ids, got {text!r}") from None
    if not ids:
        raise GameError("empty coalition")
    return mask_of(ids)


def game_to_json(game: NTUGame) -> dict:
    return {
        "players": list(game.players),
        "coalitions": [
            {"members": list(members(mask)), "generators": [[format_rational(v) for v in g] for g in gens]}
            for mask, gens in game.table
        ],
    }


def game_from_json(data: Any) -> NTUGame:
    if not isinstance(data, dict) or "players" not in data or "coalitions" not in data:
        raise GameError("game JSON needs 'players' and 'coalitions'")
    players = data["players"]
    if not isinstance(players, list) or not all(isinstance(p, int) and not isinstance(p, bool) for p in players):
        raise GameError("'players' must be a list of integer ids")
    assignments = {}
    for entry in data["coalitions"]:
        try:
            mem = entry["members"]
            gens = entry["generators"]
        except (KeyError, TypeError):
            raise GameError(f"coalition entry needs 'members' and 'generators': {entry!r}") from None
        if len(set(mem)) != len(mem):
            raise GameError(f"repeated player in coalition {mem}")
        mask = mask_of(mem)
        if mask in assignments:
            raise GameError(f"coalition {sorted(mem)} appears twice")
        # members may be listed in any order; generator columns follow that order
        order = sorted(range(len(mem)), key=lambda k: mem[k])
        rows = []
        for g in gens:
            if not isinstance(g, list) or len(g) != len(mem):
                raise GameError(f"coalition {sorted(mem)}: generator {g!r} has the wrong dimension")
            rows.append(tuple(parse_rational(g[k]) for k in order))
        assignments[mask] = rows
    return new_game(players, assignments)


def dumps_game(game: NTUGame) -> str:
    return json.dumps(game_to_json(game), indent=1)


def loads_game(text: str) -> NTUGame:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameError(f"invalid JSON: {e}") from None
    return game_from_json(data)


def load_game(path) -> NTUGame:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise GameError(f"cannot read {path}: {e}") from None
    return loads_game(text)


def save_game(game: NTUGame, path) -> None:
    Path(path).write_text(dumps_game(game) + "\n")


def to_jsonable(obj: Any) -> Any:
    """Recursively convert reports, witnesses and regions to JSON values."""
    from .regions import Region

    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, (Fraction, float)):
        return format_rational(obj)
    if isinstance(obj, NTUGame):
        return game_to_json(obj)
    if isinstance(obj, Region):
        return obj.to_json()
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            if k == "coalition" and isinstance(v, int):
                out[k] = list(members(v))
            else:
                out[str(k)] = to_jsonable(v)
        return out
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if hasattr(obj, "__dataclass_fields__"):
        return {k: to_jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}
    raise TypeError(f"cannot serialize {type(obj).__name__}")
