"""Measure every Reed-Solomon family for the given field sizes and print a
table of measured epsilon against (k-1)/n.

    python3 scripts/rs_tightness.py --q 3 5 7
"""

import argparse
import time
from fractions import Fraction

from mdshash.constructions import rs_family
from mdshash.family import measure_epsilon_u


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[3, 4, 5, 7])
    args = ap.parse_args()

    print(f"{'q':>3} {'k':>3} {'n':>3} {'N':>3} {'domain':>8} {'eps':>6} {'(k-1)/n':>8}  ok")
    bad = 0
    t0 = time.perf_counter()
    for q in args.q:
        for n in range(3, q + 1):
            for k in range(2, n):
                _, fam = rs_family(q, k, n)
                eps = measure_epsilon_u(fam).epsilon
                target = Fraction(k - 1, n)
                bad += eps != target
                print(f"{q:>3} {k:>3} {n:>3} {fam.N:>3} {fam.n:>8} {str(eps):>6} {str(target):>8}  {'yes' if eps == target else 'NO'}")
    print(f"{bad} mismatches, {time.perf_counter() - t0:.2f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
