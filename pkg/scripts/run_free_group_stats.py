#!/usr/bin/env python3
"""Free-group statistics: prefix counts against the log2 line, the level
walk return probability, cancellation exceedance versus the analytic bound,
and growth slopes, compared across ranks (default d = 2 vs d = 5)."""

import argparse
from pathlib import Path

import numpy as np

from algrec import freestats
from algrec.cli import write_csv


def run_rank(d: int, steps: int, seeds, trials: int, out_dir: Path) -> None:
    print(f"== F_{d}")
    exact = freestats.return_probability(d)
    estimate = freestats.return_excursion_estimate(d, 10 ** 5, seeds[0])
    print(f"return probability: exact {exact} = {float(exact):.6f}, "
          f"Monte Carlo {estimate:.6f}")
    rows = []
    for seed in seeds:
        stats = freestats.walk_prefix_stats(d, steps, seed)
        check = freestats.log_bound_check(stats)
        rows.append([seed, stats.max_depth,
                     freestats.smallest_passing_j0(stats), check.holds])
        write_csv(out_dir / f"prefix_vj_d{d}_seed{seed}.csv", {"d": d},
                  ["j", "v_j", "log2_j"],
                  [[j, stats.count(j), f"{np.log2(j):.6f}"]
                   for j in sorted(stats.counts)])
    write_csv(out_dir / f"prefix_summary_d{d}.csv", {"d": d, "steps": steps},
              ["seed", "max_depth", "smallest_passing_j0", "holds_beyond_j0"],
              rows)
    pool_rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seeds[0], 1])))
    pool = freestats.random_reduced_words(d, 64, 8, pool_rng)
    sample = freestats.cancellation_experiment(
        d, trials, [tuple(int(x) for x in w) for w in pool], seeds[0])
    write_csv(out_dir / f"cancellation_d{d}.csv", {"d": d},
              ["s", "trials", "exceed_count", "empirical", "bound"],
              [[r.length, r.trials, r.exceed_count, f"{r.empirical:.8e}",
                f"{r.bound(d):.8e}"] for r in sample.table])
    for r in sample.table:
        print(f"cancel s={r.length:4d}: empirical {r.empirical:.2e} "
              f"vs bound {r.bound(d):.2e}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="free_stats_out")
    parser.add_argument("--ranks", type=int, nargs="+", default=[2, 5])
    parser.add_argument("--steps", type=int, default=10_000)
    parser.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3])
    parser.add_argument("--trials", type=int, default=100_000)
    args = parser.parse_args()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for d in args.ranks:
        run_rank(d, args.steps, args.seeds, args.trials, out_dir)


if __name__ == "__main__":
    main()
