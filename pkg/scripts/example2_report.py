#!/usr/bin/env python3
"""Full 14-ball analysis as JSON on stdout, optional per-point CSV."""

import argparse
import json
import sys

from shadowgeo.analysis import analyze_example2


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tangent-grid", type=int, default=20000)
    ap.add_argument("--area-samples", type=int, default=1_000_000)
    ap.add_argument("--falsifier-grid", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv", default=None,
                    help="also write per-point tangent verdicts to this path")
    args = ap.parse_args()

    rep = analyze_example2(tangent_grid=args.tangent_grid,
                           area_samples=args.area_samples,
                           seed=args.seed,
                           falsifier_grid=args.falsifier_grid)
    if args.csv:
        rep.write_csv(args.csv)
    json.dump(rep.to_dict(), sys.stdout, indent=2)
    print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
