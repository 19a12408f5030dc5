"""Sweep q and tabulate the index (dim_q pi)^2 and T0 for a few representations."""

import argparse
import csv
import sys
from dataclasses import dataclass, field

import numpy as np

from qsubfactor.corep import parse_rep
from qsubfactor.type3 import t0
from qsubfactor.wassermann import index, index_value


@dataclass
class SweepConfig:
    reps: list[str] = field(default_factory=lambda: ["1/2", "1", "0 + 1/2", "2x1/2"])
    q_min: float = 0.05
    q_max: float = 0.99
    steps: int = 20


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rep", action="append", help="rep spec; repeatable")
    ap.add_argument("--steps", type=int, default=SweepConfig.steps)
    args = ap.parse_args(argv)
    cfg = SweepConfig(steps=args.steps)
    if args.rep:
        cfg.reps = args.rep

    reps = [parse_rep(r) for r in cfg.reps]
    for spec, rep in zip(cfg.reps, reps):
        print(f"# index({spec}) = {index(rep).to_text()}", file=sys.stderr)
    w = csv.writer(sys.stdout)
    w.writerow(["q", "T0"] + cfg.reps)
    for q in np.linspace(cfg.q_min, cfg.q_max, cfg.steps):
        w.writerow([f"{q:.4f}", f"{t0(q):.6f}"] + [f"{index_value(r, q):.6f}" for r in reps])


if __name__ == "__main__":
    main()
