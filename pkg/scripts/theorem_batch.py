"""Desk-check the three characterization results over seeded random games.

    python scripts/theorem_batch.py --games 200 --players 2 3 4 --out results/theorems.json
"""
import argparse
import json
import time
from collections import Counter
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from ntucore.harness import GenConfig, check_theorem1, check_theorem2, check_theorem3, derive_seed, games_with_core, random_game


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--games", type=int, default=100, help="instances per theorem and player count")
    ap.add_argument("--players", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--epsilon", default="1/2")
    ap.add_argument("--out")
    args = ap.parse_args()
    eps = Fraction(args.epsilon)

    summary = []
    for n in args.players:
        cfg = GenConfig(seed=derive_seed(args.seed, n), n_players=n, size_bias=1)
        for which in (1, 2, 3):
            t0 = time.perf_counter()
            failed = Counter()
            bundles = []
            if which == 1:
                results = [check_theorem1(random_game(replace(cfg, seed=derive_seed(cfg.seed, i)))) for i in range(args.games)]
            else:
                fn = check_theorem2 if which == 2 else check_theorem3
                results = [fn(g, x, eps) for g, x in games_with_core(cfg, args.games)]
            for r in results:
                for c in r.failures():
                    failed[c.name] += 1
                    bundles.append(c.bundle)
            row = {
                "theorem": which,
                "players": n,
                "instances": len(results),
                "failed_instances": sum(not r.passed for r in results),
                "failed_claims": dict(failed),
                "seconds": round(time.perf_counter() - t0, 2),
                "bundles": bundles[:5],
            }
            summary.append(row)
            print(f"theorem {which}  n={n}  {row['instances']} instances  "
                  f"{row['failed_instances']} failed  {row['seconds']}s")
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(json.dumps(summary, indent=1))


if __name__ == "__main__":
    main()
