"""Residuals of the q-trace intertwining identity and of E = F H G over a grid."""

import argparse
import itertools
import time

from qsubfactor.corep import parse_rep
from qsubfactor.type3 import verify_composition
from qsubfactor.wassermann import ToyAction, lemma1_check


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=float, nargs="+", default=[0.3, 0.5, 0.7])
    ap.add_argument("--reps", nargs="+", default=["0", "1/2", "1", "0 + 1/2", "2x1/2"])
    ap.add_argument("--sigmas", nargs="+", default=["0", "1/2", "1"])
    args = ap.parse_args(argv)

    print(f"{'q':>5} {'pi':>10} {'sigma':>6} {'lemma1':>10} {'E=FHG':>10} {'sec':>6}")
    for q, p, s in itertools.product(args.q, args.reps, args.sigmas):
        pi, act = parse_rep(p), ToyAction(parse_rep(s), q)
        t = time.perf_counter()
        r1 = lemma1_check(pi, act)
        r2 = verify_composition(pi, act, q)
        print(f"{q:>5} {p:>10} {s:>6} {r1:>10.2e} {r2:>10.2e} {time.perf_counter() - t:>6.2f}")


if __name__ == "__main__":
    main()
