"""Search for greedy-versus-optimal gaps over several seeds and families.

    python3 scripts/gap_search.py --families lz77,lz78 --seeds 0,1,2 --budget 20000

Prints one line per (family, seed); every reported gap has been confirmed by
the exhaustive oracle.
"""

import argparse
import time

from lzpl.core import format_token
from lzpl.corpus import render
from lzpl.oracle import search_greedy_gap


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--families", default="lz77,lz78,static")
    ap.add_argument("--seeds", default="0,1,2")
    ap.add_argument("--budget", type=int, default=20_000)
    ap.add_argument("--alphabet", type=int, default=2)
    ap.add_argument("--max-len", type=int, default=16, dest="max_len")
    args = ap.parse_args()

    for family in args.families.split(","):
        for seed in map(int, args.seeds.split(",")):
            t0 = time.perf_counter()
            result = search_greedy_gap(family, args.alphabet, args.max_len, args.budget, seed)
            elapsed = time.perf_counter() - t0
            head = f"{family:<6} seed {seed}: {result.explored} explored in {elapsed:.1f}s"
            if result.found is None:
                print(f"{head}, no gap")
                continue
            gap = result.found
            print(f"{head}, gap on {render(gap.text)!r} under {gap.config.describe()}")
            print(f"    greedy  {gap.greedy.token_count}: {' '.join(map(format_token, gap.greedy.tokens))}")
            print(f"    optimal {gap.optimal_count}: {' '.join(map(format_token, gap.optimal.tokens))}")


if __name__ == "__main__":
    main()
