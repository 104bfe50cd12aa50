"""Random instances, theorem desk checks and counterexample search."""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

from .axioms import (
    AXIOMS,
    CORE,
    SOLUTIONS,
    AxiomReport,
    Solution,
    Verdict,
    am_premise,
    check_am,
    check_cssc,
    check_irec,
    check_nespg,
    check_po,
    check_ssc,
    check_wispc,
    check_wsc,
    cssc_premise,
    non_ir_replay,
    point_region,
    revalidate,
    run_axioms,
    wc_probe,
)
from .game import GameError, NTUGame, b_vector, members, new_game, popcount, submasks, subgame, to_fraction
from .io import game_to_json, to_jsonable
from .predicates import in_core, is_pareto
from .reductions import epsilon_game, epsilon_sequence, epsilon_x_game, epsilon_schedule, x_epsilon
from .regions import core_region, game_grid, hausdorff_linf, ir_region, sample_points


@dataclass(frozen=True)
class GenConfig:
    """Random game parameters.

    ``size_bias`` lifts the value range of coalition S by
    ``size_bias * (|S| - 1)``, which makes nonempty cores common.
    """

    seed: int = 0
    n_players: int = 3
    max_generators_per_coalition: int = 3
    value_range: tuple = (Fraction(0), Fraction(4))
    denominator_bound: int = 2
    size_bias: Fraction = Fraction(0)

    def __post_init__(self):
        if not 1 <= self.n_players <= 5:
            raise ValueError("n_players must be in 1..5")
        if not 1 <= self.max_generators_per_coalition <= 6:
            raise ValueError("max_generators_per_coalition must be in 1..6")
        if self.denominator_bound < 1:
            raise ValueError("denominator_bound must be positive")
        lo, hi = (to_fraction(v) for v in self.value_range)
        if lo > hi:
            raise ValueError("value_range is empty")
        object.__setattr__(self, "value_range", (lo, hi))
        object.__setattr__(self, "size_bias", to_fraction(self.size_bias))


def derive_seed(seed: int, index: int) -> int:
    return (seed * 1_000_003 + index) % 2**64


def _draw(rng: random.Random, lo: Fraction, hi: Fraction, dbound: int) -> Fraction:
    while True:
        d = rng.randint(1, dbound)
        a, b = math.ceil(lo * d), math.floor(hi * d)
        if a <= b:
            return Fraction(rng.randint(a, b), d)


def random_game(cfg: GenConfig) -> NTUGame:
    rng = random.Random(cfg.seed)
    lo, hi = cfg.value_range
    players = tuple(range(cfg.n_players))
    table = {}
    for mask in range(1, 1 << cfg.n_players):
        k = popcount(mask)
        shift = cfg.size_bias * (k - 1)
        gens = [
            tuple(_draw(rng, lo + shift, hi + shift, cfg.denominator_bound) for _ in range(k))
            for _ in range(rng.randint(1, cfg.max_generators_per_coalition))
        ]
        table[mask] = gens
    return new_game(players, table)


def impoverish(game: NTUGame, seed: int, max_shift=2, denominator_bound: int = 2, keep_probability: float = 0.5) -> NTUGame:
    """Shrink each proper coalition's payoff set (or keep it) at random.

    A shrunk coalition has all its generators moved down by the same
    nonnegative rational. V(N) is untouched.
    """
    rng = random.Random(seed)
    sets = {}
    for mask, gens in game.table:
        if mask == game.grand or rng.random() < keep_probability:
            sets[mask] = gens
            continue
        s = _draw(rng, Fraction(0), to_fraction(max_shift), denominator_bound)
        sets[mask] = [tuple(v - s for v in g) for g in gens]
    out = new_game(game.players, sets)
    why = am_premise(game, out)
    if why is not None:
        raise GameError(f"impoverished game fails the antimonotonicity premise: {why}")
    return out


# --- theorem checks ---------------------------------------------------------


@dataclass
class Claim:
    name: str
    passed: bool
    detail: str = ""
    witness: Optional[dict] = None
    bundle: Optional[dict] = None


@dataclass
class TheoremCheckResult:
    theorem: int
    claims: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def failures(self) -> list:
        return [c for c in self.claims if not c.passed]

    def add(self, name: str, passed: bool, detail: str = "", witness=None, bundle=None):
        self.claims.append(Claim(name, bool(passed), detail, witness, bundle))

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "passed": self.passed,
            "seconds": round(self.seconds, 4),
            "claims": [to_jsonable(c) for c in self.claims],
        }


def _bundle(game: NTUGame, **inputs) -> dict:
    return {"game": game_to_json(game), "inputs": to_jsonable(inputs)}


def _all_subgames(game: NTUGame) -> list:
    return [subgame(game, m) for m in submasks(game.grand)]


def _core_passes(result: TheoremCheckResult, game: NTUGame, checks: Sequence, label: str = "core") -> None:
    """Run ``checks`` for CORE on the game and all of its subgames, one claim per axiom."""
    for check in checks:
        bad = None
        for g in _all_subgames(game):
            rep = check(CORE, g)
            if rep.violated:
                bad = (g, rep)
                break
        name = f"{label}-{check.__name__.removeprefix('check_')}"
        if bad is None:
            result.add(name, True)
        else:
            g, rep = bad
            result.add(name, False, str(rep), rep.witness, _bundle(game, subgame=list(g.players)))


def check_theorem1(game: NTUGame) -> TheoremCheckResult:
    """PO, NESPG, SSC and CSSC pin down the core."""
    t0 = time.perf_counter()
    res = TheoremCheckResult(1)
    _core_passes(res, game, (check_po, check_nespg, check_ssc, check_cssc))

    core = CORE(game)
    grid = game_grid(game)
    for name in ("PARETO", "IR", "IR_PARETO", "FEASIBLE", "EMPTY"):
        sol = SOLUTIONS[name]
        region = sol(game)
        if not (core.issubset(region) and not region.issubset(core)):
            res.add(f"outside-core-refuted-{name}", True, "does not strictly exceed the core")
            continue
        # the argument applies PO inside the SS reduced games, which are
        # subgames whenever x_S is still affordable; so PO is checked on
        # every subgame, SSC on the game itself
        failing, where = None, game
        for g in _all_subgames(game)[::-1]:
            po = check_po(sol, g)
            if po.violated:
                failing, where = po, g
                break
        if failing is None:
            ssc = check_ssc(sol, game)
            failing = ssc if ssc.violated else None
        ok = failing is not None and revalidate(failing, sol, where)
        detail = str(failing) if failing else "exceeds core but passes PO and SSC"
        if failing is not None and where is not game:
            detail += f" on subgame {members(where.grand)}"
        res.add(f"outside-core-refuted-{name}", ok, detail,
                failing.witness if failing else None, None if ok else _bundle(game, solution=name))

    bad = [x for x in sample_points(core, grid) if cssc_premise(CORE, game, x) is not None]
    res.add("core-meets-cssc-premise", not bad, f"{len(bad)} core points fail the premise",
            {"x": bad[0]} if bad else None, _bundle(game) if bad else None)

    if game.n == 1:
        res.add("single-player-core-is-b", core == point_region(game.players, b_vector(game)))
    res.seconds = time.perf_counter() - t0
    return res


def _require_core_point(game: NTUGame, x, eps):
    x = game.check_point(x)
    if not in_core(game, x):
        raise GameError(f"{tuple(map(str, x))} is not in the core")
    eps = to_fraction(eps)
    if eps <= 0:
        raise GameError("epsilon must be positive")
    return x, eps


def _epsilon_claims(res: TheoremCheckResult, game: NTUGame, x, eps, k: int = 6) -> None:
    n = game.n
    gx = epsilon_x_game(game, x, eps)
    xe = x_epsilon(x, eps)
    nonempty = [m for m in submasks(game.grand, proper=True)
                if popcount(m) > 1 and not core_region(subgame(gx, m)).is_empty()]
    res.add("eps-x-subgame-cores-empty", not nonempty,
            "" if not nonempty else f"nonempty core on {members(nonempty[0])}",
            None, _bundle(game, x=x, eps=eps) if nonempty else None)

    core_gx = core_region(gx)
    single = core_gx == point_region(game.players, xe)
    res.add("eps-x-core-is-x-eps", single, str(core_gx), None, None if single else _bundle(game, x=x, eps=eps))

    irec = check_irec(CORE, gx)
    res.add("eps-x-irec", irec.verdict is Verdict.PASS, str(irec))

    in_eps = in_core(epsilon_game(game, x, eps), xe)
    res.add("x-eps-in-eps-core", in_eps, "", None, None if in_eps else _bundle(game, x=x, eps=eps))

    seq = epsilon_sequence(game, x, eps, k)
    dists = [hausdorff_linf(g, game) for g, _ in seq]
    sched = epsilon_schedule(eps, k)
    ok = (all(d > 0 for d in dists)
          and all(b <= a for a, b in zip(dists, dists[1:]))
          and all(d <= e / n for d, e in zip(dists, sched)))
    res.add("hausdorff-sequence", ok, "distances " + ", ".join(map(str, dists)))
    wc = wc_probe(seq, game, x, CORE)
    res.add("wc-probe", wc.verdict is Verdict.PASS, str(wc))


def check_theorem2(game: NTUGame, x, eps) -> TheoremCheckResult:
    """The epsilon construction that puts every core point into any solution
    with PO, IREC, SSC, WC and AM."""
    t0 = time.perf_counter()
    x, eps = _require_core_point(game, x, eps)
    res = TheoremCheckResult(2)
    _epsilon_claims(res, game, x, eps)
    res.seconds = time.perf_counter() - t0
    return res


def _nonir_point(sol: Solution, game: NTUGame):
    """A point of sol(game) below b in some coordinate, preferring Pareto ones."""
    outside = sol(game) - ir_region(game)
    if outside.is_empty():
        return None
    pts = sample_points(outside, game_grid(game))
    for p in pts:
        if is_pareto(game, p):
            return p
    return pts[0]


def check_theorem3(game: NTUGame, x, eps, am_pairs: int = 3, seed: int = 0) -> TheoremCheckResult:
    """Core containment for PO, IREC, WSC, WC, WISPC and AM."""
    t0 = time.perf_counter()
    x, eps = _require_core_point(game, x, eps)
    res = TheoremCheckResult(3)
    _core_passes(res, game, (check_po, check_irec, check_wsc, check_wispc))

    am_bad = None
    for i in range(am_pairs):
        imp = impoverish(game, derive_seed(seed, i))
        rep = check_am(CORE, game, imp)
        if rep.violated:
            am_bad = (imp, rep)
            break
    res.add("core-am", am_bad is None, "" if am_bad is None else str(am_bad[1]),
            None, None if am_bad is None else {"game": game_to_json(game), "impoverished": game_to_json(am_bad[0])})

    for name in ("PARETO", "IR", "IR_PARETO", "FEASIBLE", "EMPTY"):
        sol = SOLUTIONS[name]
        p = _nonir_point(sol, game)
        if p is None:
            res.add(f"non-ir-refuted-{name}", True, "all points individually rational")
            continue
        rep = non_ir_replay(sol, game, p)
        target = game
        if rep.witness and "reduced_game" in rep.witness:
            target = rep.witness["reduced_game"]
        ok = rep.violated and revalidate(rep, sol, target)
        res.add(f"non-ir-refuted-{name}", ok, str(rep), rep.witness, None if ok else _bundle(game, solution=name, x=p))

    _epsilon_claims(res, game, x, eps)
    res.seconds = time.perf_counter() - t0
    return res


def core_point(game: NTUGame, rng: Optional[random.Random] = None):
    pts = sample_points(core_region(game), game_grid(game))
    if not pts:
        return None
    return rng.choice(pts) if rng is not None else pts[0]


def games_with_core(cfg: GenConfig, count: int, max_tries: int = 10000):
    """Yield ``count`` (game, core point) pairs from seeds derived from cfg.seed."""
    rng = random.Random(cfg.seed)
    found = 0
    for i in range(max_tries):
        g = random_game(replace(cfg, seed=derive_seed(cfg.seed, i)))
        x = core_point(g, rng)
        if x is None:
            continue
        yield g, x
        found += 1
        if found == count:
            return
    raise RuntimeError(f"only {found} games with nonempty core in {max_tries} draws")


# --- counterexample search --------------------------------------------------


@dataclass
class Violation:
    trial: int
    seed: int
    axiom: str
    report: AxiomReport
    revalidated: bool
    bundle: dict

    def to_json(self) -> dict:
        return {
            "trial": self.trial,
            "seed": self.seed,
            "axiom": self.axiom,
            "note": self.report.note,
            "sampled": self.report.sampled,
            "witness": to_jsonable(self.report.witness),
            "revalidated": self.revalidated,
            "bundle": self.bundle,
        }


@dataclass
class SearchReport:
    solution: str
    axioms: tuple
    config: GenConfig
    trials: int
    violations: list = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)
    games_exceeding_core: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return bool(self.violations)

    def to_json(self) -> dict:
        c = self.config
        return {
            "solution": self.solution,
            "axioms": list(self.axioms),
            "config": {
                "seed": c.seed,
                "n_players": c.n_players,
                "max_generators_per_coalition": c.max_generators_per_coalition,
                "value_range": [str(c.value_range[0]), str(c.value_range[1])],
                "denominator_bound": c.denominator_bound,
                "size_bias": str(c.size_bias),
            },
            "trials": self.trials,
            "verdicts": self.verdicts,
            "violations": [v.to_json() for v in self.violations],
        }


def counterexample_search(sol: Solution, axioms: Sequence[str], cfg: GenConfig, trials: int,
                          stop_first: bool = False) -> SearchReport:
    """Run the axiom checkers on ``trials`` seeded random games."""
    axioms = tuple(axioms)
    for ax in axioms:
        if ax not in AXIOMS:
            raise ValueError(f"unknown axiom {ax!r}")
    rep = SearchReport(sol.name, axioms, cfg, trials, verdicts={a: {v.value: 0 for v in Verdict} for a in axioms})
    for t in range(trials):
        seed = derive_seed(cfg.seed, t)
        game = random_game(replace(cfg, seed=seed))
        imp = impoverish(game, seed) if "am" in axioms else None
        region, core = sol(game), CORE(game)
        if core.issubset(region) and not region.issubset(core):
            rep.games_exceeding_core.append(t)
        for r in run_axioms(sol, game, axioms, impoverished=imp):
            rep.verdicts[r.axiom][r.verdict.value] += 1
            if r.violated:
                bundle = {"game": game_to_json(game), "solution": sol.name}
                if imp is not None:
                    bundle["impoverished"] = game_to_json(imp)
                rep.violations.append(Violation(t, seed, r.axiom, r, revalidate(r, sol, game), bundle))
        if stop_first and rep.violations:
            break
    return rep
