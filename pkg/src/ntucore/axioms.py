"""Solutions as game -> region maps, and instance-level axiom checkers.

PO, NESPG, IREC, AM and WISPC are decided exactly on regions. SSC, WSC and
CSSC quantify over a continuum of points and are discharged on one sample
per cell of the solution region overlaid with the game's generator grid;
their reports carry ``sampled=True``. WC is only probed on explicit finite
sequences.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .game import (
    GameError,
    NTUGame,
    Point,
    b_vector,
    mask_of,
    members,
    popcount,
    submasks,
    subgame,
)
from .predicates import contains, in_core, is_individually_rational, is_pareto
from .reductions import epsilon_sequence, ss_reduced, ws_reduced
from .regions import (
    Region,
    any_point,
    core_region,
    feasible_region,
    game_grid,
    hausdorff_linf,
    inf_max_coordinate,
    ir_region,
    pareto_region,
    point_interval,
    point_with_max_below,
    point_with_min_above,
    sample_points,
    sup_min_coordinate,
)

AXIOMS = ("po", "nespg", "irec", "ssc", "cssc", "wsc", "wc", "am", "wispc")


class Verdict(str, enum.Enum):
    PASS = "pass"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class Solution:
    """A named map from games to subsets of V(N).

    ``member`` is an optional pointwise predicate equivalent to membership in
    ``evaluate(game)``; witnesses are re-validated through it so that checks
    do not rely on the region code alone.
    """

    name: str
    evaluate: Callable[[NTUGame], Region]
    member: Optional[Callable[[NTUGame, Point], bool]] = field(default=None, compare=False)

    def __call__(self, game: NTUGame) -> Region:
        return self.evaluate(game)

    def has(self, game: NTUGame, x: Sequence) -> bool:
        if self.member is not None:
            return self.member(game, tuple(x))
        return self.evaluate(game).contains(tuple(x))


def _cached(fn):
    return lru_cache(maxsize=16384)(fn)


def _empty(game: NTUGame) -> Region:
    return Region.empty(game.players)


CORE = Solution("CORE", _cached(core_region), in_core)
PARETO = Solution("PARETO", _cached(pareto_region), is_pareto)
IR = Solution("IR", _cached(ir_region), is_individually_rational)
IR_PARETO = Solution(
    "IR_PARETO",
    _cached(lambda g: ir_region(g) & pareto_region(g)),
    lambda g, x: is_pareto(g, x) and is_individually_rational(g, x),
)
FEASIBLE = Solution("FEASIBLE", _cached(feasible_region), lambda g, x: contains(g, g.grand, x))
EMPTY = Solution("EMPTY", _empty, lambda g, x: False)

SOLUTIONS = {s.name: s for s in (CORE, PARETO, IR, IR_PARETO, FEASIBLE, EMPTY)}


def get_solution(name: str) -> Solution:
    try:
        return SOLUTIONS[name.upper()]
    except KeyError:
        raise ValueError(f"unknown solution {name!r}; choose from {', '.join(SOLUTIONS)}") from None


def point_region(players, x: Sequence) -> Region:
    return Region(tuple(players), (tuple(point_interval(v) for v in x),))


def planted_solution(base: Solution, game: NTUGame, x: Sequence, name: str = "PLANTED") -> Solution:
    """``base`` plus the point ``x`` on ``game`` and x_S on every weak secession
    reduction of ``game`` with respect to ``x``."""
    x = game.check_point(x)
    extra = {game: x}
    for mask in submasks(game.grand, proper=True):
        extra[ws_reduced(game, mask, x, require_pareto=False)] = game.restrict(x, mask)

    def evaluate(g):
        r = base(g)
        if g in extra:
            r = r | point_region(g.players, extra[g])
        return r

    def member(g, y):
        return tuple(y) == extra.get(g) or base.has(g, y)

    return Solution(name, evaluate, member)


@dataclass
class AxiomReport:
    axiom: str
    verdict: Verdict
    witness: Optional[dict] = None
    sampled: bool = False
    note: str = ""

    @property
    def violated(self) -> bool:
        return self.verdict is Verdict.VIOLATED

    def __str__(self) -> str:
        s = f"{self.axiom}: {self.verdict.value}"
        if self.sampled:
            s += " (sampled)"
        if self.note:
            s += f" [{self.note}]"
        if self.witness:
            s += " witness=" + ", ".join(f"{k}={_show(v)}" for k, v in self.witness.items())
        return s


def _show(v):
    if isinstance(v, tuple):
        return "(" + ",".join(str(t) for t in v) + ")"
    if isinstance(v, NTUGame):
        return "<game>"
    return str(v)


def _pass(axiom, **kw) -> AxiomReport:
    return AxiomReport(axiom, Verdict.PASS, **kw)


def _na(axiom, note, **kw) -> AxiomReport:
    return AxiomReport(axiom, Verdict.NOT_APPLICABLE, note=note, **kw)


def _violated(axiom, witness, **kw) -> AxiomReport:
    return AxiomReport(axiom, Verdict.VIOLATED, witness=witness, **kw)


@lru_cache(maxsize=None)
def _proper(grand: int) -> tuple:
    return tuple(sorted(submasks(grand, proper=True), key=lambda m: (popcount(m), m)))


def proper_coalitions(game: NTUGame) -> list:
    """Nonempty proper coalitions, smallest first."""
    return list(_proper(game.grand))


# --- the nine axioms --------------------------------------------------------


def check_po(sol: Solution, game: NTUGame) -> AxiomReport:
    extra = sol(game) - pareto_region(game)
    if extra.is_empty():
        return _pass("po")
    return _violated("po", {"x": any_point(extra)})


def check_nespg(sol: Solution, game: NTUGame) -> AxiomReport:
    if game.n != 1:
        return _na("nespg", "game has more than one player")
    if sol(game).is_empty():
        return _violated("nespg", {"b": b_vector(game)})
    return _pass("nespg")


def check_irec(sol: Solution, game: NTUGame) -> AxiomReport:
    for mask in proper_coalitions(game):
        if popcount(mask) > 1 and not sol(subgame(game, mask)).is_empty():
            return _na("irec", f"premise fails: solution of subgame on {members(mask)} is nonempty")
    ir = ir_region(game)
    if ir.is_empty():
        return _na("irec", "no individually rational point")
    if sol(game).is_empty():
        return _violated("irec", {"ir_point": any_point(ir)})
    return _pass("irec")


def _reduced_member(sol: Solution, reduce, game: NTUGame):
    """Memoized test x_S in sol(reduce(game, S, x)); the reduced game depends
    on x only through x_S. Callers pass Pareto points only."""
    memo = {}

    def test(mask: int, x) -> bool:
        xs = game.restrict(x, mask)
        key = (mask, xs)
        if key not in memo:
            memo[key] = sol(reduce(game, mask, x, require_pareto=False)).contains(xs)
        return memo[key]

    return test


def _consistency(axiom: str, reduce, sol: Solution, game: NTUGame) -> AxiomReport:
    region = sol(game)
    note = ""
    par = pareto_region(game)
    if not region.issubset(par):
        region = region & par
        note = "restricted to Pareto points of the solution"
    coalitions = proper_coalitions(game)
    test = _reduced_member(sol, reduce, game)
    for x in sample_points(region, game_grid(game)):
        for mask in coalitions:
            if not test(mask, x):
                return _violated(axiom, {"x": x, "coalition": mask}, sampled=True, note=note)
    return _pass(axiom, sampled=True, note=note)


def check_ssc(sol: Solution, game: NTUGame) -> AxiomReport:
    return _consistency("ssc", ss_reduced, sol, game)


def check_wsc(sol: Solution, game: NTUGame) -> AxiomReport:
    return _consistency("wsc", ws_reduced, sol, game)


def cssc_premise(sol: Solution, game: NTUGame, x: Sequence, _test=None) -> Optional[int]:
    """First proper coalition S with x_S outside sol(SS reduction), or None."""
    test = _test or _reduced_member(sol, ss_reduced, game)
    for mask in _proper(game.grand):
        if not test(mask, x):
            return mask
    return None


def check_cssc(sol: Solution, game: NTUGame) -> AxiomReport:
    if game.n < 2:
        return _na("cssc", "single-player game", sampled=True)
    region = sol(game)
    test = _reduced_member(sol, ss_reduced, game)
    for x in sample_points(pareto_region(game), game_grid(game)):
        if cssc_premise(sol, game, x, test) is None and not region.contains(x):
            return _violated("cssc", {"x": x}, sampled=True)
    return _pass("cssc", sampled=True)


def am_premise(game: NTUGame, impoverished: NTUGame) -> Optional[str]:
    """Why (game, impoverished) is not an antimonotonicity pair, or None."""
    if game.players != impoverished.players:
        return "player sets differ"
    if game.generators(game.grand) != impoverished.generators(game.grand):
        return "grand coalition payoff sets differ"
    for mask in submasks(game.grand, proper=True):
        for g in impoverished.generators(mask):
            if not contains(game, mask, g):
                return f"impoverished V({members(mask)}) is not contained in V({members(mask)})"
    return None


def check_am(sol: Solution, game: NTUGame, impoverished: NTUGame) -> AxiomReport:
    why = am_premise(game, impoverished)
    if why is not None:
        return _na("am", why)
    lost = sol(game) - sol(impoverished)
    if lost.is_empty():
        return _pass("am")
    return _violated("am", {"x": any_point(lost), "impoverished": impoverished})


def check_wispc(sol: Solution, game: NTUGame) -> AxiomReport:
    if game.n < 2:
        return _na("wispc", "single-player game")
    xs = sol(game)
    if xs.is_empty():
        return _pass("wispc")
    for mask in sorted(m for m in submasks(game.grand, proper=True) if popcount(m) == game.n - 1):
        ys = sol(subgame(game, mask))
        if ys.is_empty():
            continue
        s_star = sup_min_coordinate(ys, mask)
        m_star = inf_max_coordinate(xs, mask)
        if m_star.value < s_star.value:
            x = point_with_max_below(xs, mask, s_star.value)
            y = point_with_min_above(ys, mask, max(game.restrict(x, mask)))
            return _violated("wispc", {"x": x, "y": y, "coalition": mask})
    return _pass("wispc")


def _linf(a: Sequence, b: Sequence):
    return max(abs(u - v) for u, v in zip(a, b))


def wc_probe(seq: Sequence, limit_game: NTUGame, limit_point: Sequence, sol: Solution) -> AxiomReport:
    """Check weak continuity on a finite sequence [(game_k, x_k)].

    The premises (x_k in sol(game_k), distances to the limit shrinking) are
    verified on the prefix; the verdict is whether the limit point belongs to
    sol(limit_game). This is evidence on one instance, not a proof.
    """
    if not seq:
        raise GameError("wc_probe needs a nonempty sequence")
    limit_point = limit_game.check_point(limit_point)
    proper = dict((m, g) for m, g in limit_game.table if m != limit_game.grand)
    for k, (g, _) in enumerate(seq, 1):
        if g.players != limit_game.players or any(g.generators(m) != gens for m, gens in proper.items()):
            raise GameError(f"sequence game {k} differs from the limit game on a proper coalition")
    for k, (g, xk) in enumerate(seq, 1):
        if not sol(g).contains(tuple(xk)):
            return _na("wc", f"x^{k} is not in the solution of game {k}")
    dists = [hausdorff_linf(g, limit_game) for g, _ in seq]
    gaps = [_linf(xk, limit_point) for _, xk in seq]
    if any(b > a for a, b in zip(dists, dists[1:])):
        return _na("wc", "Hausdorff distances are not nonincreasing")
    if any(b > a for a, b in zip(gaps, gaps[1:])):
        return _na("wc", "point distances are not nonincreasing")
    witness = {"k": len(seq), "distances": tuple(dists), "x": limit_point}
    if sol(limit_game).contains(limit_point):
        return _pass("wc", witness=witness)
    return _violated("wc", witness)


def wc_instance(sol: Solution, game: NTUGame, eps0=1, k: int = 4) -> AxiomReport:
    """WC probe along the epsilon-sequence anchored at a point of sol(game)
    (falling back to a core point)."""
    pts = sample_points(sol(game)) or sample_points(core_region(game))
    if not pts:
        return _na("wc", "no anchor point")
    x = pts[0]
    return wc_probe(epsilon_sequence(game, x, eps0, k), game, x, sol)


def run_axioms(sol: Solution, game: NTUGame, axioms: Sequence[str] = AXIOMS, impoverished: NTUGame | None = None) -> list:
    out = []
    for ax in axioms:
        if ax == "po":
            out.append(check_po(sol, game))
        elif ax == "nespg":
            out.append(check_nespg(sol, game))
        elif ax == "irec":
            out.append(check_irec(sol, game))
        elif ax == "ssc":
            out.append(check_ssc(sol, game))
        elif ax == "cssc":
            out.append(check_cssc(sol, game))
        elif ax == "wsc":
            out.append(check_wsc(sol, game))
        elif ax == "wispc":
            out.append(check_wispc(sol, game))
        elif ax == "am":
            if impoverished is None:
                out.append(_na("am", "no impoverished game supplied"))
            else:
                out.append(check_am(sol, game, impoverished))
        elif ax == "wc":
            out.append(wc_instance(sol, game))
        else:
            raise ValueError(f"unknown axiom {ax!r}; choose from {', '.join(AXIOMS)}")
    return out


# --- independent witness re-validation ---------------------------------------


def _nowhere(sol: Solution, game: NTUGame) -> bool:
    # built-in solutions are unions of generator-grid cells, so one point per
    # cell of V(N) decides emptiness
    return not any(sol.has(game, p) for p in sample_points(feasible_region(game), game_grid(game)))


def revalidate(report: AxiomReport, sol: Solution, game: NTUGame) -> bool:
    """Re-check a violation witness with pointwise predicates only."""
    if not report.violated:
        return False
    w = report.witness or {}
    ax = report.axiom
    if ax == "po":
        return sol.has(game, w["x"]) and not is_pareto(game, w["x"])
    if ax == "nespg":
        return game.n == 1 and _nowhere(sol, game)
    if ax == "irec":
        return is_individually_rational(game, w["ir_point"]) and _nowhere(sol, game)
    if ax in ("ssc", "wsc"):
        x, mask = w["x"], w["coalition"]
        reduce = ss_reduced if ax == "ssc" else ws_reduced
        return (
            sol.has(game, x)
            and is_pareto(game, x)
            and not sol.has(reduce(game, mask, x), game.restrict(x, mask))
        )
    if ax == "cssc":
        x = w["x"]
        return (
            is_pareto(game, x)
            and all(sol.has(ss_reduced(game, m, x), game.restrict(x, m)) for m in proper_coalitions(game))
            and not sol.has(game, x)
        )
    if ax == "am":
        return sol.has(game, w["x"]) and not sol.has(w["impoverished"], w["x"])
    if ax == "wispc":
        x, y, mask = w["x"], w["y"], w["coalition"]
        sub = subgame(game, mask)
        return (
            popcount(mask) == game.n - 1
            and sol.has(game, x)
            and sol.has(sub, y)
            and max(game.restrict(x, mask)) < min(y)
        )
    if ax == "wc":
        return not sol.has(game, w["x"])
    raise ValueError(f"unknown axiom {ax!r}")


def non_ir_replay(sol: Solution, game: NTUGame, x: Sequence) -> AxiomReport:
    """Show that a solution containing a non-IR point x fails PO, WSC or WISPC.

    With two players WISPC fails directly on the game; with more, x is pushed
    through the weak secession reduction on a pair {i, j}, where either WSC
    fails or WISPC fails on the reduced two-player game.
    """
    x = game.check_point(x)
    if not sol.has(game, x):
        raise GameError("replay point is not in the solution")
    b = b_vector(game)
    low = [p for p, v, bv in zip(game.players, x, b) if v < bv]
    if not low:
        raise GameError("replay point is individually rational")
    if not is_pareto(game, x):
        return _violated("po", {"x": x})
    i = low[0]
    if game.n == 2:
        rep = check_wispc(sol, game)
        rep.note = "direct"
        return rep
    j = next(p for p in game.players if p != i)
    pair = mask_of((i, j))
    reduced = ws_reduced(game, pair, x)
    xs = game.restrict(x, pair)
    if not sol.has(reduced, xs):
        return _violated("wsc", {"x": x, "coalition": pair})
    rep = check_wispc(sol, reduced)
    rep.note = f"on weak secession reduction to {members(pair)}"
    if rep.violated:
        rep.witness["reduced_game"] = reduced
    return rep

