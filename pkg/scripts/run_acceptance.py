"""Run the acceptance battery and print one line per criterion.

    python3 scripts/run_acceptance.py [--only 1,3] [--mutate prop46-partition]
"""

import argparse
import sys

from pdgames.acceptance import CRITERIA


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", default=None)
    ap.add_argument("--mutate", choices=("prop46-partition",), default=None)
    args = ap.parse_args()
    numbers = [int(x) for x in args.only.split(",")] if args.only else sorted(CRITERIA)
    failed = 0
    for n in numbers:
        if n == 4 and args.mutate:
            r = CRITERIA[n](mutate=True)
        else:
            r = CRITERIA[n]()
        print(f"{r.line()}  ({r.seconds:.2f}s)", flush=True)
        failed += not r.ok
    print(f"{len(numbers) - failed}/{len(numbers)} criteria passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
