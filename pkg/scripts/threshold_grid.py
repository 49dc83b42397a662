"""Scan the threshold functions over a grid and report the tightest margins.

For each m, prints the smallest gap in 1 > eps1 > eps2, 1 > eps3 > 1/m and
1 > eps4 > 1/m, and the smallest eps4 discriminant, with the n attaining it.

    python3 scripts/threshold_grid.py --m-max 6 --n-max 2000
"""

import argparse

from mdshash.bounds import thresholds


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-max", type=int, default=6)
    ap.add_argument("--n-max", type=int, default=2000)
    args = ap.parse_args()

    violations = 0
    print(f"{'m':>2}  {'min(eps1-eps2)':>22}  {'min(1-eps1)':>22}  {'min(eps3-1/m)':>22}  {'min(eps4-1/m)':>22}  {'min disc':>24}")
    for m in range(2, args.m_max + 1):
        margins = {key: (float("inf"), None) for key in ("e12", "e1top", "e3", "e4", "disc")}

        def note(key, value, n):
            if value < margins[key][0]:
                margins[key] = (value, n)

        for n in range(m + 1, args.n_max + 1):
            ts = thresholds(n, m)
            note("e3", float(ts.eps3) - 1 / m, n)
            if n > m * m:
                note("e12", float(ts.eps1 - ts.eps2), n)
                note("e1top", 1 - float(ts.eps1), n)
            if n > 2**m:
                note("disc", ts.discriminant, n)
                note("e4", ts.eps4 - 1 / m, n)
        violations += sum(v <= 0 for v, _ in margins.values() if v != float("inf"))

        def cell(key):
            v, n = margins[key]
            return "-" if n is None else f"{v:.3e} @n={n}"

        print(f"{m:>2}  {cell('e12'):>22}  {cell('e1top'):>22}  {cell('e3'):>22}  {cell('e4'):>22}  {cell('disc'):>24}")
    print("all margins positive" if violations == 0 else f"{violations} non-positive margins")
    return 1 if violations else 0


if __name__ == "__main__":
    raise SystemExit(main())
