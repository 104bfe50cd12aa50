"""Hausdorff distance of the epsilon-enlarged games to the original, per step.

Each row is (j, eps_j, d_j, eps_j/n); the bound d_j <= eps_j/n should be
tight whenever x^eps sticks out of V(N) in every direction.

    python scripts/epsilon_convergence.py --game game.json --point 1,1
    python scripts/epsilon_convergence.py --random --players 3 --seed 4
"""
import argparse

from ntucore.harness import GenConfig, core_point, games_with_core
from ntucore.io import load_game, parse_point, parse_rational
from ntucore.reductions import epsilon_schedule, epsilon_sequence
from ntucore.regions import hausdorff_linf


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--game")
    ap.add_argument("--point", help="defaults to the first sampled core point")
    ap.add_argument("--random", action="store_true")
    ap.add_argument("--players", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--eps0", default="1")
    ap.add_argument("--steps", type=int, default=8)
    args = ap.parse_args()

    if args.random:
        game, x = next(games_with_core(GenConfig(seed=args.seed, n_players=args.players, size_bias=1), 1))
    else:
        game = load_game(args.game)
        x = parse_point(args.point) if args.point else core_point(game)
        if x is None:
            raise SystemExit("empty core and no --point given")
    eps0 = parse_rational(args.eps0)
    seq = epsilon_sequence(game, x, eps0, args.steps)
    print(f"x = ({', '.join(map(str, x))})")
    print(f"{'j':>3} {'eps_j':>10} {'d_j':>10} {'eps_j/n':>10}")
    for j, ((g, _), e) in enumerate(zip(seq, epsilon_schedule(eps0, args.steps)), 1):
        d = hausdorff_linf(g, game)
        print(f"{j:>3} {str(e):>10} {str(d):>10} {str(e / game.n):>10}")


if __name__ == "__main__":
    main()
