"""Write a dominance sweep to CSV and summarise where the verdict flips.

    python3 scripts/crossover_sweep.py u --m 3 --n 10:100 --eps 3/10:1:1/20 --out sweep_u.csv
"""

import argparse
import csv
from collections import defaultdict
from fractions import Fraction

from mdshash.bounds import SWEEP_COLUMNS, Kind, sweep
from mdshash.cli import eps_grid, int_range


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("kind", type=Kind.parse)
    ap.add_argument("--n", type=int_range, required=True)
    ap.add_argument("--m", type=int_range, required=True)
    ap.add_argument("--eps", type=eps_grid, required=True)
    ap.add_argument("--out", default="sweep.csv")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    flips = defaultdict(list)
    with open(args.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        writer.writeheader()
        last = {}
        for row in sweep(args.kind, args.n, args.m, args.eps, workers=args.workers):
            writer.writerow(row)
            key = (int(row["m"]), int(row["n"]))
            if row["dominant"] in ("old", "new"):
                if last.get(key) == "old" and row["dominant"] == "new":
                    flips[key].append((Fraction(row["eps"]), row["threshold"]))
                last[key] = row["dominant"]

    print(f"wrote {args.out}")
    for (m, n), hits in sorted(flips.items())[:20]:
        eps, t = hits[0]
        print(f"m={m} n={n}: old -> new at eps={eps} (threshold {float(t):.6f})")
    if len(flips) > 20:
        print(f"... {len(flips) - 20} more (m, n) pairs flip")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
