"""Command line interface.

Exit codes: 0 success / all checks passed, 1 violation or failed claim
found, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .axioms import AXIOMS, get_solution, run_axioms, revalidate
from .game import GameError, members
from .harness import (
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
from .io import dumps_game, format_rational, load_game, parse_coalition, parse_point, parse_rational, save_game, to_jsonable
from .predicates import contains, find_domination, in_core, is_individually_rational, is_pareto
from .reductions import epsilon_game, epsilon_x_game, ss_reduced, ws_reduced
from .regions import core_region, hausdorff_linf, ir_region, pareto_region


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(to_jsonable(payload), indent=1))
    else:
        print(text)


def _emit_game(args, game) -> None:
    if getattr(args, "out", None):
        save_game(game, args.out)
    else:
        print(dumps_game(game))


def cmd_region(args) -> int:
    game = load_game(args.game)
    fn = {"core": core_region, "pareto": pareto_region, "ir": ir_region}[args.command]
    region = fn(game)
    _emit(args, str(region), region)
    return 0


def cmd_membership(args) -> int:
    game = load_game(args.game)
    x = game.check_point(parse_point(args.point))
    wit = find_domination(game, x)
    result = {
        "point": x,
        "feasible": contains(game, game.grand, x),
        "core": in_core(game, x),
        "pareto": is_pareto(game, x),
        "individually_rational": is_individually_rational(game, x),
        "blocked_by": None if wit is None else {"coalition": wit.coalition, "generator": wit.generator},
    }
    lines = [f"{k}: {result[k]}" for k in ("feasible", "core", "pareto", "individually_rational")]
    if wit is not None:
        lines.append(f"blocked by coalition {list(members(wit.coalition))} with {tuple(map(str, wit.generator))}")
    _emit(args, "\n".join(lines), result)
    return 0


def cmd_reduce(args) -> int:
    game = load_game(args.game)
    fn = ss_reduced if args.kind == "ss" else ws_reduced
    _emit_game(args, fn(game, parse_coalition(args.coalition), parse_point(args.point), require_pareto=not args.allow_non_pareto))
    return 0


def cmd_perturb(args) -> int:
    game = load_game(args.game)
    fn = epsilon_game if args.kind == "eps" else epsilon_x_game
    _emit_game(args, fn(game, parse_point(args.point), parse_rational(args.epsilon)))
    return 0


def cmd_hausdorff(args) -> int:
    d = hausdorff_linf(load_game(args.a), load_game(args.b))
    _emit(args, format_rational(d), {"hausdorff_linf": d})
    return 0


def _axiom_list(text: str) -> list:
    axioms = [a.strip().lower() for a in text.split(",") if a.strip()]
    if text.strip().lower() == "all":
        return list(AXIOMS)
    bad = [a for a in axioms if a not in AXIOMS]
    if bad or not axioms:
        raise GameError(f"unknown axioms {bad}; choose from {', '.join(AXIOMS)} or 'all'")
    return axioms


def cmd_check_axioms(args) -> int:
    game = load_game(args.game)
    sol = get_solution(args.solution)
    axioms = _axiom_list(args.axioms)
    imp = None
    if args.impoverished:
        imp = load_game(args.impoverished)
    elif "am" in axioms:
        imp = impoverish(game, args.seed)
    reports = run_axioms(sol, game, axioms, impoverished=imp)
    payload = {
        "solution": sol.name,
        "reports": [
            {"axiom": r.axiom, "verdict": r.verdict, "sampled": r.sampled, "note": r.note,
             "witness": r.witness, "revalidated": revalidate(r, sol, game) if r.violated else None}
            for r in reports
        ],
    }
    _emit(args, "\n".join(str(r) for r in reports), payload)
    return 1 if any(r.violated for r in reports) else 0


def _config(args, seed=None) -> GenConfig:
    return GenConfig(
        seed=args.seed if seed is None else seed,
        n_players=args.players,
        max_generators_per_coalition=args.max_generators,
        value_range=(parse_rational(args.low), parse_rational(args.high)),
        denominator_bound=args.denominator_bound,
        size_bias=parse_rational(args.size_bias),
    )


def cmd_check_theorems(args) -> int:
    cfg = _config(args)
    eps = parse_rational(args.epsilon)
    results = []
    if args.which == 1:
        for t in range(args.trials):
            results.append(check_theorem1(random_game(replace(cfg, seed=derive_seed(cfg.seed, t)))))
    else:
        fn = check_theorem2 if args.which == 2 else check_theorem3
        for game, x in games_with_core(cfg, args.trials):
            results.append(fn(game, x, eps))
    failed = [r for r in results if not r.passed]
    lines = [f"theorem {args.which}: {len(results)} instances, {len(failed)} with failed claims"]
    for r in failed:
        lines += [f"  FAIL {c.name}: {c.detail}" for c in r.failures()]
    _emit(args, "\n".join(lines), {"theorem": args.which, "results": [r.to_json() for r in results]})
    return 1 if failed else 0


def cmd_gen_random(args) -> int:
    game = random_game(_config(args))
    _emit_game(args, game)
    return 0


def cmd_search(args) -> int:
    sol = get_solution(args.solution)
    rep = counterexample_search(sol, _axiom_list(args.axioms), _config(args), args.trials, stop_first=args.first)
    if args.out:
        with open(args.out, "w") as f:
            json.dump(rep.to_json(), f, indent=1)
    lines = [f"{sol.name}: {args.trials} trials, {len(rep.violations)} violations"]
    for ax, counts in rep.verdicts.items():
        lines.append(f"  {ax}: " + ", ".join(f"{k}={v}" for k, v in counts.items()))
    for v in rep.violations[:10]:
        lines.append(f"  trial {v.trial} (seed {v.seed}): {v.report}")
    _emit(args, "\n".join(lines), rep.to_json())
    return 1 if rep.found else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ntucore", description="Exact cores and axiom checks for finitely generated NTU games.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    def gen_opts(sp):
        sp.add_argument("--players", type=int, default=3)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--max-generators", type=int, default=3)
        sp.add_argument("--low", default="0")
        sp.add_argument("--high", default="4")
        sp.add_argument("--denominator-bound", type=int, default=2)
        sp.add_argument("--size-bias", default="1")

    for name in ("core", "pareto", "ir"):
        sp = sub.add_parser(name, help=f"print the {name} region as canonical boxes")
        sp.add_argument("game")
        fmt(sp)
        sp.set_defaults(func=cmd_region)

    sp = sub.add_parser("membership", help="classify a point of R^N")
    sp.add_argument("game")
    sp.add_argument("--point", required=True, help="comma separated rationals, e.g. 1,1/2")
    fmt(sp)
    sp.set_defaults(func=cmd_membership)

    sp = sub.add_parser("reduce", help="strong or weak secession reduced game")
    sp.add_argument("game")
    sp.add_argument("--kind", choices=("ss", "ws"), required=True)
    sp.add_argument("--coalition", required=True, help="comma separated player ids")
    sp.add_argument("--point", required=True)
    sp.add_argument("--allow-non-pareto", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("perturb", help="epsilon-enlarged games")
    sp.add_argument("game")
    sp.add_argument("--kind", choices=("eps", "epsx"), required=True)
    sp.add_argument("--point", required=True)
    sp.add_argument("--epsilon", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_perturb)

    sp = sub.add_parser("hausdorff", help="L-infinity Hausdorff distance between grand-coalition sets")
    sp.add_argument("a")
    sp.add_argument("b")
    fmt(sp)
    sp.set_defaults(func=cmd_hausdorff)

    sp = sub.add_parser("check-axioms", help="run axiom checkers for a solution on one game")
    sp.add_argument("game")
    sp.add_argument("--solution", default="CORE")
    sp.add_argument("--axioms", default="all")
    sp.add_argument("--impoverished", help="game file for the antimonotonicity pair")
    sp.add_argument("--seed", type=int, default=0, help="impoverishment seed when --impoverished is absent")
    fmt(sp)
    sp.set_defaults(func=cmd_check_axioms)

    sp = sub.add_parser("check-theorems", help="desk-check a theorem on random instances")
    sp.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--epsilon", default="1")
    gen_opts(sp)
    fmt(sp)
    sp.set_defaults(func=cmd_check_theorems)

    sp = sub.add_parser("gen-random", help="write a seeded random game")
    gen_opts(sp)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen_random)

    sp = sub.add_parser("search", help="counterexample search over random games")
    sp.add_argument("--solution", required=True)
    sp.add_argument("--axioms", required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--first", action="store_true", help="stop at the first violating game")
    sp.add_argument("--out", help="write the JSON report here")
    gen_opts(sp)
    fmt(sp)
    sp.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GameError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
