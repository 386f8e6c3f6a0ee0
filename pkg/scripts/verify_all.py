"""Run every verification suite for one barrier and print a compact table."""

import argparse
import sys

from barrier_rhs.checks import SUITES, run_suite
from barrier_rhs.core import PhysicalConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--v0", type=float, default=10.0)
    ap.add_argument("--a", type=float, default=0.0)
    ap.add_argument("--b", type=float, default=1.0)
    args = ap.parse_args()
    cfg = PhysicalConfig(v0=args.v0, a=args.a, b=args.b)

    failed = 0
    for suite in SUITES:
        for c in run_suite(cfg, suite):
            failed += not c.passed
            print(f"{suite:10s} {c.name:28s} {c.value:10.3e} <= {c.tolerance:8.1e}  {'ok' if c.passed else 'FAIL'}")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
