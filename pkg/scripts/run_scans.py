#!/usr/bin/env python3
"""Run the standard summatory scans and write their reports.

Produces CSV checkpoint tables and JSON reports under results/, and prints
the fitted coefficients next to their closed-form targets.

    python3 scripts/run_scans.py --xmax 1000000 --outdir results
"""

import argparse
import json
import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from gcdzeta import analytic  # noqa: E402

GAMMA = 0.5772156649015329


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--xmax", type=int, default=10**6)
    parser.add_argument("--outdir", default="results")
    parser.add_argument("--checkpoints", type=int, default=40)
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    jobs = [("A", 1), ("A", 2), ("tau", 2), ("tau", 3)]
    for kind, order in jobs:
        report = analytic.summatory_scan(
            kind, order, args.xmax, checkpoint_count=args.checkpoints
        )
        stem = f"{kind}{order}_x{args.xmax}"
        analytic.write_checkpoint_csv(str(outdir / f"{stem}.csv"), report)
        with open(outdir / f"{stem}.json", "w") as fh:
            json.dump(report.to_dict(), fh, sort_keys=True)
            fh.write("\n")

        print(f"== {kind}_{order}, x_max = {args.xmax} ({report.elapsed:.1f}s)")
        print(f"   closed-form leading : {report.fixed_leading:.8f}")
        if report.fitted_poly:
            print(f"   free-fit leading    : {report.fitted_leading_free:.8f}")
            print(f"   fitted polynomial   : {report.fitted_poly}")
            slope = analytic.residual_exponent_estimate(report)
            print(f"   residual exponent   : {slope:.3f}")
        if kind == "tau" and order == 2:
            x, total = report.checkpoints[-1]
            exact_main = x * math.log(x) + (2 * GAMMA - 1) * x
            print(f"   Delta({x}) with exact main term: {total - exact_main:.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
