#!/usr/bin/env python3
"""Sweep the extremal-order statistic toward its limit log(r+1).

For each r the modulus is the product of all primes in (x/log x, x]; the
statistic log A_r(n) loglog n / log n converges to log(r+1) from above,
slowly: the overshoot is driven by omega(n) loglog(n) / log(n), which is
still about 1.06 at x = 1e6.  The last column shows the lower-bound
reference curve b_r(x) for the summatory residual on the same grid.

    python3 scripts/extremal_sweep.py --rmax 3 --xmax 1000000
"""

import argparse
import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from gcdzeta import analytic  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rmax", type=int, default=3)
    parser.add_argument("--xmax", type=int, default=10**6)
    parser.add_argument("--points", type=int, default=7)
    args = parser.parse_args()

    grid = [
        int(round(10 ** (2 + i * (math.log10(args.xmax) - 2) / (args.points - 1))))
        for i in range(args.points)
    ]
    for r in range(1, args.rmax + 1):
        target = math.log(r + 1)
        print(f"== r = {r}, limit log(r+1) = {target:.6f}")
        print(f"   {'x':>9} {'omega':>7} {'statistic':>10} {'ratio':>7} {'b_r(x)':>12}")
        for x in grid:
            sample = analytic.extremal_statistic(r, x)
            ratio = sample.statistic / target
            bound = analytic.omega_bound(r, x)
            print(
                f"   {x:>9} {sample.omega_n_x:>7} {sample.statistic:>10.5f} "
                f"{ratio:>7.4f} {bound:>12.4f}"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
