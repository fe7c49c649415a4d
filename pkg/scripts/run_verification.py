#!/usr/bin/env python3
"""Run the randomized verification suite and print a one-line-per-check table.

Exit status is nonzero when any check fails.  Failures come with replayable
instances; feed one back through ``lormatch verify --check NAME --replay ...``
to reproduce it in isolation.
"""

import argparse
import json
import sys
import time

from lormatch import CHECKS, TrialConfig, run_check


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--tolerance", type=float, default=1e-9)
    parser.add_argument("--check", action="append", help="run only this check (repeatable)")
    args = parser.parse_args()

    names = args.check or list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        parser.error(f"unknown checks: {', '.join(unknown)}")

    cfg = TrialConfig(seed=args.seed, trials=args.trials, tolerance=args.tolerance)
    width = max(len(n) for n in names)
    bad = 0
    for name in names:
        start = time.perf_counter()
        result = run_check(name, cfg)
        elapsed = time.perf_counter() - start
        status = "ok" if result.passed else "FAIL"
        print(f"{name:<{width}}  {result.trials:>4} trials  {elapsed:7.2f}s  {status}")
        if not result.passed:
            bad += 1
            for failure in result.failures:
                print(f"  trial {failure['trial']}: {failure['reasons'][0]}")
                print(f"  replay: {json.dumps(failure['instance'])}")
    print(f"{len(names) - bad}/{len(names)} checks passed (seed={cfg.seed}, trials={cfg.trials})")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
