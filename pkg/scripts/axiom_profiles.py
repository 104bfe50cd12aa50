"""Which axioms does each built-in solution break, and how often?

Prints a solution x axiom table of violation counts over seeded random games.
A zero row for CORE is the expected outcome; the other rows show which axiom
carries the weight in ruling each alternative out.

    python scripts/axiom_profiles.py --games 100 --players 3
"""
import argparse
import json

from ntucore.axioms import AXIOMS, SOLUTIONS
from ntucore.harness import GenConfig, counterexample_search


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--games", type=int, default=50)
    ap.add_argument("--players", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--size-bias", default="1")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    cfg = GenConfig(seed=args.seed, n_players=args.players, size_bias=args.size_bias)
    table = {}
    for name, sol in SOLUTIONS.items():
        rep = counterexample_search(sol, AXIOMS, cfg, args.games)
        table[name] = {a: rep.verdicts[a]["violated"] for a in AXIOMS}
        bad = [v for v in rep.violations if not v.revalidated]
        if bad:
            print(f"warning: {len(bad)} {name} witnesses did not revalidate")

    if args.json:
        print(json.dumps(table, indent=1))
        return
    width = max(map(len, table)) + 2
    print("".ljust(width) + "".join(a.rjust(7) for a in AXIOMS))
    for name, row in table.items():
        print(name.ljust(width) + "".join(str(row[a]).rjust(7) for a in AXIOMS))


if __name__ == "__main__":
    main()
