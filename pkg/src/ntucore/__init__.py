"""Exact cores, reduced games and axiom checks for finitely generated NTU games."""
from .game import GameError, NTUGame, b_vector, new_game, normalize_generators, subgame
from .regions import Region, core_region, feasible_region, hausdorff_linf, ir_region, pareto_region

__all__ = [
    "GameError",
    "NTUGame",
    "Region",
    "b_vector",
    "core_region",
    "feasible_region",
    "hausdorff_linf",
    "ir_region",
    "new_game",
    "normalize_generators",
    "pareto_region",
    "subgame",
]
