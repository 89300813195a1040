"""How often does the elimination order matter? A sweep over random games.

    python scripts/order_dependence.py --games 1000 --size 4 --payoffs 3

For each relation, counts the games whose set of reachable outcomes (over
every elimination order) has more than one element, and how many games the
relation solves to a single profile.
"""
import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from oracles import random_game  # noqa: E402
from stratgames import elimination  # noqa: E402

RELATIONS = ("iesds", "ienbr", "iesdms", "iewds", "iewdms")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--games", type=int, default=500)
    ap.add_argument("--size", type=int, default=4, help="max strategies per player")
    ap.add_argument("--payoffs", type=int, default=3, help="payoffs drawn from -P..P")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    games = [random_game(rng, (args.size, args.size), -args.payoffs, args.payoffs) for _ in range(args.games)]
    print(f"{'relation':10s} {'order-dependent':>16s} {'solved':>8s} {'max outcomes':>13s} {'seconds':>8s}")
    for rel in RELATIONS:
        start = time.time()
        dependent = solved = widest = 0
        for g in games:
            outs = elimination.all_outcomes(g, rel, step_budget=10 ** 6)
            dependent += len(outs) > 1
            solved += all(r.solution() is not None for r in outs)
            widest = max(widest, len(outs))
        print(f"{rel:10s} {dependent:16d} {solved:8d} {widest:13d} {time.time() - start:8.1f}")


if __name__ == "__main__":
    main()
