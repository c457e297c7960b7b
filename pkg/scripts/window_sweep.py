"""Token counts of greedy, flexible and optimal parsing as the window grows.

    python3 scripts/window_sweep.py --length 2000 --alphabet 4 --texts 5

Writes CSV: generator, h, strategy, mean tokens. Under LZ77 greedy and
optimal coincide at every window, so the interesting columns are the window
effect and the flexible parse.
"""

import argparse
import csv
import random
import statistics
import sys

from lzpl.core import DictionaryConfig, ScaleLimits
from lzpl.corpus import GENERATORS, random_text
from lzpl.parsers import flexible_parse, greedy_parse, optimal_parse


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--length", type=int, default=2000)
    ap.add_argument("--alphabet", type=int, default=4)
    ap.add_argument("--texts", type=int, default=5)
    ap.add_argument("--windows", default="4,16,64,256,unbounded")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    limits = ScaleLimits(max_graph=None)
    windows = [None if w == "unbounded" else int(w) for w in args.windows.split(",")]
    parsers = {"greedy": greedy_parse, "flexible": flexible_parse,
               "optimal": lambda c, t: optimal_parse(c, t, limits)}
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["generator", "h", "strategy", "mean_tokens"])
    for generator in GENERATORS:
        rng = random.Random(f"{args.seed}/{generator}")
        texts = [random_text(rng, args.length, args.alphabet, generator) for _ in range(args.texts)]
        for h in windows:
            config = DictionaryConfig.lz77(h)
            for name, parse in parsers.items():
                mean = statistics.fmean(parse(config, t).token_count for t in texts)
                out.writerow([generator, "unbounded" if h is None else h, name, f"{mean:.1f}"])


if __name__ == "__main__":
    main()
