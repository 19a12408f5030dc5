"""Print the relative-commutant dimensions of the Jones tower for a representation."""

import argparse
import math

from qsubfactor.corep import parse_rep
from qsubfactor.wassermann import bratteli_consistent, jones_tower


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rep", default="1/2")
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--dot", help="write the Bratteli diagram to this file")
    args = ap.parse_args(argv)

    tower = jones_tower(parse_rep(args.rep), args.n)
    print(f"rep {args.rep}, index {tower.index_poly.to_text()}")
    print(f"{'k':>3} {'dim End':>10} {'catalan':>10}  rho_k")
    for k, (rho, d) in enumerate(zip(tower.rhos, tower.end_dimensions())):
        cat = math.comb(2 * k + 2, k + 1) // (k + 2)
        print(f"{k:>3} {d:>10} {cat:>10}  {rho.render()}")
    print(f"bratteli consistent: {bratteli_consistent(tower)}")
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(tower.to_dot() + "\n")


if __name__ == "__main__":
    main()
