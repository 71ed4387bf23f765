"""Command-line scenario runner.

Subcommands: walk, closure, ar-estimate, lattice-classify, free-stats,
nilpotent-check, witness-check. Every command is deterministic in its
config and seeds; data files are byte-identical across re-runs, and wall
clock times live only in the manifest.

Exit codes: 0 success, 2 configuration error, 3 budget exhausted without a
mandatory result.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import experiments, freestats
from .closure import (
    ClosureBudget,
    inverse_witness_report,
    write_closure_dump,
    write_witness_report_csv,
)
from .config import (
    ConfigError,
    ScenarioConfig,
    build_measure,
    config_hash,
    load_config,
)
from .groups import format_element, parse_descriptor, parse_element
from .identities import (
    nilpotent_identity_check,
    torsion_inverse_witness,
    z_inverse_witness,
)
from .lattice import classify_subsemigroup, zero_in_convex_hull, ZeroInHullWitness
from .manifest import RunManifest
from .measures import validate_symmetric
from .walks import generate_walk, write_positions_csv, write_trace

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NO_RESULT = 3


def write_csv(path: Path, meta: dict, header: list[str], rows) -> None:
    """CSV with '#'-prefixed metadata lines, then one header row."""
    with open(path, "w", newline="") as fh:
        for key in sorted(meta):
            fh.write(f"# {key}={meta[key]}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _prepare(args) -> tuple[ScenarioConfig, dict, Path, int]:
    config = load_config(args.config) if args.config else ScenarioConfig()
    overrides = {}
    if args.seed:
        overrides["seeds"] = tuple(args.seed)
    if args.out:
        overrides["out_dir"] = args.out
    if getattr(args, "d", None):
        overrides["group"] = parse_descriptor(f"Free({args.d})")
    if getattr(args, "steps", None):
        overrides["steps"] = args.steps
    if getattr(args, "trials", None):
        overrides["trials"] = args.trials
    if overrides:
        config = type(config)(**{**config.__dict__, **overrides})
    threads = experiments.resolve_threads(args.threads)
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    meta = {"config": config_hash(config)}
    return config, meta, out_dir, threads


def cmd_walk(args) -> int:
    config, meta, out_dir, threads = _prepare(args)
    measure = build_measure(config)
    manifest = RunManifest("walk", meta["config"], config.seeds)

    def one(seed: int):
        start = time.perf_counter()
        trace = generate_walk(measure, config.steps, seed)
        trace_path = out_dir / f"trace_seed{seed}.txt"
        write_trace(trace, trace_path, extra=f"config={meta['config']}")
        csv_path = out_dir / f"positions_seed{seed}.csv"
        write_positions_csv(trace, csv_path, meta=meta)
        return trace_path, csv_path, time.perf_counter() - start

    for seed, (trace_path, csv_path, elapsed) in zip(
            config.seeds,
            experiments.map_seeds(one, config.seeds, threads)):
        manifest.add_file(trace_path)
        manifest.add_file(csv_path)
        manifest.record_time(f"seed{seed}", elapsed)
    manifest.write(out_dir)
    print(f"walk: wrote {len(manifest.files)} files to {out_dir}")
    return EXIT_OK


def _budget(config: ScenarioConfig) -> ClosureBudget:
    return ClosureBudget(config.budget_radius, config.budget_max_elements,
                         config.budget_max_products)


def cmd_closure(args) -> int:
    config, meta, out_dir, threads = _prepare(args)
    measure = build_measure(config)
    budget = _budget(config)
    manifest = RunManifest("closure", meta["config"], config.seeds)

    def one(seed: int):
        start = time.perf_counter()
        trace = generate_walk(measure, config.steps, seed)
        report = inverse_witness_report(trace, config.tail_index, budget)
        dump_path = out_dir / f"closure_seed{seed}.txt"
        write_closure_dump(report.closure_result, dump_path, meta=meta)
        report_path = out_dir / f"witness_seed{seed}.csv"
        write_witness_report_csv(report, report_path, meta=meta)
        return dump_path, report_path, time.perf_counter() - start

    for seed, (dump_path, report_path, elapsed) in zip(
            config.seeds, experiments.map_seeds(one, config.seeds, threads)):
        manifest.add_file(dump_path)
        manifest.add_file(report_path)
        manifest.record_time(f"seed{seed}", elapsed)
    manifest.write(out_dir)
    print(f"closure: wrote {2 * len(config.seeds)} files to {out_dir}")
    return EXIT_OK


def cmd_ar_estimate(args) -> int:
    config, meta, out_dir, threads = _prepare(args)
    measure = build_measure(config)
    check = validate_symmetric(measure, ball_radius=1)
    if not check.symmetric:
        raise ConfigError("measure",
                          f"not symmetric at atom {format_element(check.offending_atom)}")
    budget = _budget(config)
    radius = config.effective_coverage_radius()
    start = time.perf_counter()
    rows = experiments.coverage_survey(
        measure, config.steps, config.effective_eval_steps(),
        config.tail_index, budget, radius, config.seeds, threads)
    elapsed = time.perf_counter() - start
    path = out_dir / "ar_coverage.csv"
    write_csv(path, {**meta, "group": config.group, "radius": radius},
              ["seed", "n_used", "coverage", "present_fraction",
               "present_fraction_decided", "exhausted"],
              [[r.seed, r.n_used, str(r.coverage), str(r.present_fraction),
                str(r.present_fraction_decided), r.exhausted] for r in rows])
    manifest = RunManifest("ar-estimate", meta["config"], config.seeds)
    manifest.add_file(path)
    manifest.record_time("survey", elapsed)
    manifest.write(out_dir)
    by_n: dict[int, list[Fraction]] = {}
    for r in rows:
        by_n.setdefault(r.n_used, []).append(r.coverage)
    for n_used in sorted(by_n):
        mean = experiments.mean_fraction(by_n[n_used])
        print(f"ar-estimate: N={n_used} mean coverage {float(mean):.4f} "
              f"over {len(by_n[n_used])} seeds")
    return EXIT_OK


def cmd_lattice_classify(args) -> int:
    path = Path(args.vectors)
    if not path.exists():
        raise ConfigError("vectors", f"no such file: {path}")
    vectors = []
    for line in path.read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        vectors.append(tuple(int(t) for t in line.split()))
    if not vectors:
        raise ConfigError("vectors", f"{path} contains no vectors")
    classification = classify_subsemigroup(vectors)
    witness = zero_in_convex_hull(vectors) if any(any(v) for v in vectors) else None
    lines = [f"classification: {classification}"]
    if classification.report is not None:
        report = classification.report
        lines.append(f"rank: {report.rank}")
        lines.append("smith_diagonal: " + ",".join(str(x) for x in report.smith_diagonal))
        lines.append(f"index: {'Infinite' if report.index is None else report.index}")
    if isinstance(witness, ZeroInHullWitness):
        pts = "; ".join("(" + ",".join(str(x) for x in p) + ")" for p in witness.points)
        lines.append(f"hull_certificate_points: {pts}")
        lines.append("hull_certificate_coefficients: "
                     + ",".join(str(t) for t in witness.coefficients))
    text = "\n".join(lines)
    print(text)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        report_path = out_dir / "lattice_report.txt"
        report_path.write_text(text + "\n")
        manifest = RunManifest("lattice-classify", "-", ())
        manifest.add_file(report_path)
        manifest.write(out_dir)
    return EXIT_OK


def cmd_free_stats(args) -> int:
    config, meta, out_dir, threads = _prepare(args)
    if config.group.kind != "Free":
        raise ConfigError("group.kind", "free-stats requires a Free(d) group")
    d = config.group.rank
    measure = build_measure(config)
    budget = _budget(config)
    manifest = RunManifest("free-stats", meta["config"], config.seeds)

    def one(seed: int):
        start = time.perf_counter()
        stats = freestats.walk_prefix_stats(d, config.steps, seed, j0=config.j0)
        vj_path = out_dir / f"prefix_vj_seed{seed}.csv"
        write_csv(vj_path, meta, ["j", "v_j", "log2_j"],
                  [[j, stats.count(j), f"{np.log2(j):.6f}"]
                   for j in sorted(stats.counts)])
        result = experiments.tail_closure(measure, config.steps,
                                          config.tail_index, budget, seed)
        profile = freestats.sphere_growth_profile(result)
        growth_path = out_dir / f"growth_seed{seed}.csv"
        write_csv(growth_path, {**meta, "slope": f"{profile.slope:.6f}",
                                "ambient_slope": f"{profile.ambient_slope:.6f}"},
                  ["r", "count"],
                  [[r, profile.counts[r]] for r in sorted(profile.counts)])
        check = freestats.log_bound_check(stats)
        summary = [seed, stats.max_depth, freestats.smallest_passing_j0(stats),
                   check.holds, f"{profile.slope:.6f}"]
        return vj_path, growth_path, summary, time.perf_counter() - start

    results = experiments.map_seeds(one, config.seeds, threads)
    summary_rows = []
    for seed, (vj_path, growth_path, summary, elapsed) in zip(config.seeds, results):
        manifest.add_file(vj_path)
        manifest.add_file(growth_path)
        manifest.record_time(f"seed{seed}", elapsed)
        summary_rows.append(summary)

    exact_p = freestats.return_probability(d)
    estimate = freestats.return_excursion_estimate(d, config.excursions,
                                                   config.seeds[0])
    pool_rng = np.random.Generator(
        np.random.Philox(np.random.SeedSequence([config.seeds[0], 1])))
    pool = freestats.random_reduced_words(d, config.pool_length,
                                          config.pool_size, pool_rng)
    sample = freestats.cancellation_experiment(
        d, config.trials, [tuple(int(x) for x in w) for w in pool],
        config.seeds[0], lengths=config.lengths)
    cancel_path = out_dir / "cancellation.csv"
    write_csv(cancel_path, meta,
              ["s", "trials", "exceed_count", "empirical", "bound"],
              [[row.length, row.trials, row.exceed_count,
                f"{row.empirical:.8e}", f"{row.bound(d):.8e}"]
               for row in sample.table])
    manifest.add_file(cancel_path)

    summary_path = out_dir / "free_summary.csv"
    write_csv(summary_path,
              {**meta, "return_probability_exact": exact_p,
               "return_probability_estimate": f"{estimate:.6f}"},
              ["seed", "max_depth", "smallest_passing_j0", "log_bound_holds",
               "growth_slope"],
              summary_rows)
    manifest.add_file(summary_path)
    manifest.write(out_dir)
    print(f"free-stats: return probability exact {exact_p} = {float(exact_p):.6f}, "
          f"Monte Carlo estimate {estimate:.6f}")
    print(f"free-stats: wrote {len(manifest.files)} files to {out_dir}")
    return EXIT_OK


def cmd_nilpotent_check(args) -> int:
    config, meta, out_dir, _ = _prepare(args)
    ks = range(config.k_min, config.k_max + 1)
    rows = []
    all_hold = True
    for k1 in ks:
        for k2 in ks:
            for k3 in ks:
                for k4 in ks:
                    for n in range(1, config.n_max + 1):
                        for m in range(1, config.m_max + 1):
                            res = nilpotent_identity_check(k1, k2, k3, k4, n, m)
                            all_hold &= res.holds
                            rows.append([k1, k2, k3, k4, n, m,
                                         res.exponent_pos, res.exponent_neg,
                                         res.holds])
    path = out_dir / "nilpotent_check.csv"
    write_csv(path, meta,
              ["k1", "k2", "k3", "k4", "n", "m", "exponent_pos",
               "exponent_neg", "holds"], rows)
    manifest = RunManifest("nilpotent-check", meta["config"], ())
    manifest.add_file(path)
    manifest.write(out_dir)
    print(f"nilpotent-check: {len(rows)} cases, all hold: {all_hold}")
    return EXIT_OK if all_hold else EXIT_NO_RESULT


def cmd_witness_check(args) -> int:
    config, meta, out_dir, _ = _prepare(args)
    lines = []
    code = EXIT_OK
    if config.witness_mode == "torsion":
        if not config.witness_x or not config.witness_y:
            raise ConfigError("witness.x", "torsion mode needs x and y elements")
        x = parse_element(config.group, config.witness_x)
        y = parse_element(config.group, config.witness_y)
        found = torsion_inverse_witness(x, y, config.max_k)
        if found is None:
            lines.append(f"no witness: (xy)^k != identity for k <= {config.max_k}")
            code = EXIT_NO_RESULT
        else:
            lines.append(f"k: {found.k}")
            lines.append(f"witness: {format_element(found.witness)}")
            lines.append(f"inverse_recovered: "
                         f"{found.witness == x.inverse()}")
    else:
        try:
            x_int, y_int = int(config.witness_x), int(config.witness_y)
        except ValueError:
            raise ConfigError("witness.x", "z-integer mode needs integer x and y")
        cert = z_inverse_witness(x_int, y_int)
        lines.append(f"y_copies: {cert.y_copies}")
        lines.append(f"x_copies: {cert.x_copies}")
        lines.append(f"combination_value: {cert.combination_value}")
        lines.append(f"holds: {cert.holds}")
    lines.insert(0, f"# config={meta['config']}")
    text = "\n".join(lines)
    print(text)
    path = out_dir / "witness_report.txt"
    path.write_text(text + "\n")
    manifest = RunManifest("witness-check", meta["config"], ())
    manifest.add_file(path)
    manifest.write(out_dir)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="algrec",
        description="Random-walk and semigroup-closure experiments on groups")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="path to a key = value config file")
        p.add_argument("--seed", type=int, action="append",
                       help="override config seeds (repeatable)")
        p.add_argument("--out", help="output directory")
        p.add_argument("--threads", type=int, default=None,
                       help=f"worker threads (default ${experiments.THREADS_ENV_VAR} or 1)")

    for name, fn in [("walk", cmd_walk), ("closure", cmd_closure),
                     ("ar-estimate", cmd_ar_estimate),
                     ("free-stats", cmd_free_stats),
                     ("nilpotent-check", cmd_nilpotent_check),
                     ("witness-check", cmd_witness_check)]:
        p = sub.add_parser(name)
        common(p)
        if name == "free-stats":
            p.add_argument("--d", type=int, help="free group rank override")
            p.add_argument("--steps", type=int, help="walk length override")
            p.add_argument("--trials", type=int,
                           help="cancellation trials override")
        p.set_defaults(fn=fn)

    p = sub.add_parser("lattice-classify")
    p.add_argument("vectors", help="file of whitespace-separated integer rows")
    p.add_argument("--out", help="output directory")
    p.set_defaults(fn=cmd_lattice_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
