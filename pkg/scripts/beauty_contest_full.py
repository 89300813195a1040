"""Iterated elimination of strategies strictly dominated by mixtures in the beauty contest.

    python scripts/beauty_contest_full.py --max-strategy 100

Prints one line per round and the final outcome. At full scale the game has a
million joint strategies; payoffs are computed on demand.
"""
import argparse
import time

from stratgames import catalog, elimination
from stratgames.game import full_restriction


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--players", type=int, default=3)
    ap.add_argument("--max-strategy", type=int, default=100)
    args = ap.parse_args()

    game = catalog.beauty_contest(args.players, args.max_strategy)
    r = full_restriction(game)
    start = time.time()
    rounds = 0
    while True:
        result = elimination.step(r, elimination.STRICT_MIXED)
        if result is None:
            break
        r, record = result
        rounds += 1
        removed = sorted({game.strategy_names[i][s] for i, s in record.removed}, key=int)
        print(f"round {rounds:3d}  removed {','.join(removed)}  ({time.time() - start:.1f}s)", flush=True)
    sol = r.solution()
    print(f"rounds: {rounds}")
    print(f"outcome: {game.labels(sol) if sol else r.labels()}")


if __name__ == "__main__":
    main()
