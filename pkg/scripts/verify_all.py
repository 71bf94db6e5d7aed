#!/usr/bin/env python3
"""Run every verification suite at full scale, one summary line each.

Exit status is 0 only if every suite passes outright; indeterminate
trials count against that.
"""

import argparse
import sys
import time

from shadowgeo.analysis import (
    check_lower_bound,
    check_theorem3,
    check_theorem4,
    verify_lemma,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--grid-step", type=float, default=0.01)
    args = ap.parse_args()

    jobs = [
        ("lemma hull grid", lambda: verify_lemma(side=1.0, grid_step=args.grid_step)),
        ("theorem3 boundary", lambda: check_theorem3(args.trials, seed=args.seed)),
        ("theorem4 exterior", lambda: check_theorem4(args.trials, seed=args.seed)),
        ("lower bound k=2 d=3", lambda: check_lower_bound(2, 3, args.trials, seed=args.seed)),
    ]
    rc = 0
    for label, job in jobs:
        t0 = time.perf_counter()
        rep = job()
        dt = time.perf_counter() - t0
        print(f"{label:20s} {rep.status:20s} passes={rep.passes}/{rep.trials} "
              f"indeterminate={rep.indeterminates} failures={len(rep.failures)} [{dt:.1f}s]")
        if rep.status != "pass":
            rc = 1
    return rc


if __name__ == "__main__":
    sys.exit(main())
