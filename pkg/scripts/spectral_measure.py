"""Spectral measure of a few energy intervals in both bases, plus the spectrum verdict on a grid."""

import argparse

import numpy as np

from barrier_rhs.core import PhysicalConfig
from barrier_rhs.spectral_measure import rho_interval, spectrum_verdict


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--v0", type=float, default=10.0)
    args = ap.parse_args()
    cfg = PhysicalConfig(v0=args.v0)

    np.set_printoptions(precision=3, suppress=False)
    for e1, e2 in ((1.0, 2.0), (0.5, 4.0), (args.v0 - 0.5, args.v0 + 0.5), (-5.0, -1.0)):
        for basis in ("initial", "final"):
            r = rho_interval(cfg, e1, e2, basis)
            print(f"({e1:g}, {e2:g}) {basis:7s} nodes={r.nodes:5d} rho=\n{r.rho}")
    print()
    for p in spectrum_verdict(cfg, [-5.0, -0.1, 0.0, 0.1, 5.0, args.v0]):
        print(f"E={p.e:6.2f}  {p.verdict:9s} jump={p.jump:.3g}")


if __name__ == "__main__":
    main()
