"""Print winning-set tables for the three catalog games.

For the two a+b+c+ games the table lists, for each n, the (m, p) grid with
``E`` where Eve wins from ``(q, ⊥ a^n b^m c^p)`` and ``.`` otherwise.
"""

import argparse
import itertools
import time

from pdgames.automata import Configuration
from pdgames.catalog import build_game_lemma42, build_game_prop45, build_game_prop46
from pdgames.games import Outcome, default_bounds, solve_bounded, winning_set_slice
from pdgames.words import ERASER, format_word


def abc_table(g, n_max: int) -> None:
    print(f"== {g.name}: Eve's wins on a^n b^m c^p, rows m, columns p")
    for n in range(1, n_max + 1):
        print(f"n = {n}")
        for m in range(1, n_max + 1):
            row = []
            for p in range(1, n_max + 1):
                u = ("a",) * n + ("b",) * m + ("c",) * p
                v = solve_bounded(g, Configuration("q", ("⊥",) + u), *default_bounds(len(u)))
                row.append("E" if v.outcome is Outcome.EVE_WINS else ".")
            print("   " + " ".join(row))


def eraser_counts(n_max: int) -> None:
    g = build_game_lemma42()
    t = time.perf_counter()
    won = winning_set_slice(g, "q", n_max, alphabet=("a", "b", ERASER))
    print(f"== {g.name}: winning words by length ({time.perf_counter() - t:.2f}s)")
    for n in range(n_max + 1):
        words = sorted(u for u in won if len(u) == n)
        sample = ", ".join(format_word(u) for u in words[:4])
        print(f"  |u| = {n}: {len(words):3d}  {sample}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", type=int, default=4)
    args = ap.parse_args()
    eraser_counts(max(args.n, 6))
    for g in (build_game_prop45(), build_game_prop46()):
        abc_table(g, args.n)


if __name__ == "__main__":
    main()
