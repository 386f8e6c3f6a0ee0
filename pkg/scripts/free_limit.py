"""Tabulate how the barrier quantities approach the free particle as V0 -> 0."""

import argparse

from barrier_rhs.core import PhysicalConfig
from barrier_rhs.experiments import FREE_LIMIT_SEQUENCE, free_limit_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("v0", type=float, nargs="*", default=list(FREE_LIMIT_SEQUENCE) + [0.0])
    args = ap.parse_args()

    print(f"{'V0':>8} {'max|T-1|':>12} {'max|R_l|':>12} {'||U+ - F||':>12}")
    for row in free_limit_table(PhysicalConfig(), args.v0):
        print(f"{row.v0:8.1e} {row.max_t_defect:12.3e} {row.max_r_left:12.3e} {row.transform_distance:12.3e}")


if __name__ == "__main__":
    main()
