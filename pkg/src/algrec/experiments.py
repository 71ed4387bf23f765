"""Reusable seeded experiment routines shared by the CLI, the scripts and
the acceptance suite. Every routine is deterministic in its arguments; seed
fan-out preserves seed order regardless of the thread count."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TypeVar

from .closure import (
    ClosureBudget,
    closure,
    coverage_fraction,
    inverse_witness_report,
)
from .measures import SymmetricMeasure
from .walks import WalkTrace, generate_walk

T = TypeVar("T")

#: Seed set pinned for the statistical acceptance runs.
ACCEPTANCE_SEEDS: tuple[int, ...] = tuple(range(1, 101))

THREADS_ENV_VAR = "ALGREC_THREADS"


def resolve_threads(requested: int | None) -> int:
    """--threads flag if given, else the ALGREC_THREADS env var, else 1."""
    if requested is not None:
        value = requested
    else:
        raw = os.environ.get(THREADS_ENV_VAR)
        value = int(raw) if raw else 1
    if value < 1:
        raise ValueError("thread count must be >= 1")
    return value


def map_seeds(fn: Callable[[int], T], seeds: Sequence[int],
              threads: int = 1) -> list[T]:
    """Apply fn to each seed; results come back in seed order."""
    if threads <= 1 or len(seeds) <= 1:
        return [fn(s) for s in seeds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, seeds))


@dataclass(frozen=True)
class CoverageRow:
    """One (seed, prefix length) outcome of an algebraic-recurrence probe."""

    seed: int
    n_used: int
    coverage: Fraction
    present_fraction: Fraction
    present_fraction_decided: Fraction
    exhausted: bool


def coverage_rows(measure: SymmetricMeasure, n_steps: int,
                  eval_steps: Sequence[int], tail_index: int,
                  budget: ClosureBudget, coverage_radius: int,
                  seed: int) -> list[CoverageRow]:
    """Walk once, then close and score each requested prefix of the trace."""
    trace = generate_walk(measure, n_steps, seed)
    rows = []
    for n_used in eval_steps:
        if not 1 <= n_used <= n_steps:
            raise ValueError(f"eval step {n_used} outside 1..{n_steps}")
        prefix = WalkTrace(trace.descriptor, seed,
                           trace.increments[:n_used], trace.positions[:n_used])
        report = inverse_witness_report(prefix, tail_index, budget)
        cov = coverage_fraction(report.closure_result, coverage_radius)
        rows.append(CoverageRow(seed, n_used, cov,
                                report.present_fraction,
                                report.present_fraction_decided,
                                report.closure_result.exhausted))
    return rows


def coverage_survey(measure: SymmetricMeasure, n_steps: int,
                    eval_steps: Sequence[int], tail_index: int,
                    budget: ClosureBudget, coverage_radius: int,
                    seeds: Sequence[int],
                    threads: int = 1) -> list[CoverageRow]:
    """coverage_rows across a seed list, flattened in seed order."""
    nested = map_seeds(
        lambda s: coverage_rows(measure, n_steps, eval_steps, tail_index,
                                budget, coverage_radius, s),
        seeds, threads)
    return [row for rows in nested for row in rows]


def tail_closure(measure: SymmetricMeasure, n_steps: int, tail_index: int,
                 budget: ClosureBudget, seed: int):
    """The truncated closure of {X_n .. X_N} for one seeded walk."""
    trace = generate_walk(measure, n_steps, seed)
    if not 1 <= tail_index <= n_steps:
        raise ValueError(f"tail index {tail_index} outside 1..{n_steps}")
    return closure(trace.positions[tail_index - 1:], budget,
                   generator_range=(tail_index, n_steps))


def mean_fraction(values: Iterable[Fraction]) -> Fraction:
    vals = list(values)
    return sum(vals, Fraction(0)) / len(vals) if vals else Fraction(0)
