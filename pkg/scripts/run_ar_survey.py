#!/usr/bin/env python3
"""Coverage survey across the four walk groups with the pinned seed set.

Writes one CSV per group into --out and prints the per-prefix-length mean
ball coverage, the desk-scale proxy for the tail semigroup filling the
group.
"""

import argparse
from pathlib import Path

from algrec import experiments
from algrec.cli import write_csv
from algrec.closure import ClosureBudget
from algrec.groups import cyclic, free, heisenberg, zpower
from algrec.measures import uniform_standard_measure

SCENARIOS = [
    ("z1", zpower(1), 200, (20, 200), 5),
    ("z12", cyclic(12), 500, (50, 500), 6),
    ("f5", free(5), 200, (50, 200), 4),
    ("heisenberg", heisenberg(), 500, (50, 500), 4),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="ar_survey_out")
    parser.add_argument("--seeds", type=int, default=100,
                        help="how many of the pinned seeds to use")
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    seeds = experiments.ACCEPTANCE_SEEDS[:args.seeds]
    for name, descriptor, steps, eval_steps, radius in SCENARIOS:
        measure = uniform_standard_measure(descriptor)
        budget = ClosureBudget(radius)
        rows = experiments.coverage_survey(measure, steps, eval_steps, 1,
                                           budget, radius, seeds,
                                           threads=args.threads)
        path = out_dir / f"coverage_{name}.csv"
        write_csv(path, {"group": descriptor, "radius": radius},
                  ["seed", "n_used", "coverage", "present_fraction",
                   "present_fraction_decided", "exhausted"],
                  [[r.seed, r.n_used, str(r.coverage), str(r.present_fraction),
                    str(r.present_fraction_decided), r.exhausted]
                   for r in rows])
        for n_used in eval_steps:
            sub = [r.coverage for r in rows if r.n_used == n_used]
            mean = experiments.mean_fraction(sub)
            full = sum(1 for r in rows if r.n_used == n_used and r.coverage == 1)
            print(f"{name:10s} N={n_used:4d} mean coverage {float(mean):.4f} "
                  f"full in {full}/{len(sub)} seeds")
        print(f"{name:10s} -> {path}")


if __name__ == "__main__":
    main()
