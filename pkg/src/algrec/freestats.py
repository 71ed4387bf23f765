"""Statistics over free-group walks: prefix tries, the biased reflected
level walk and its return probability, cancellation experiments, and sphere
growth profiles of truncated closures.

Logarithms are base 2 throughout. Comparisons of integer counts against
log2(j) are done exactly via 2**count <= j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .closure import ClosureResult
from .groups import GroupElement, free, word_length
from .measures import SymmetricMeasure, uniform_standard_measure
from .walks import WalkTrace, sample_atom_indices


# ---------------------------------------------------------------------------
# Prefix statistics

class PrefixTrie:
    """Interned trie over reduced words; nodes are (parent, letter) pairs.

    Supports whole-word insertion (counting every prefix of the word) and
    single-letter stepping for walks whose increments are generators, where
    moving to the parent undoes the last letter.
    """

    def __init__(self, rank: int):
        self.rank = rank
        self._children: dict[tuple[int, int], int] = {}
        self._parent: list[int] = [-1]
        self._depth: list[int] = [0]
        self._last: list[int] = [0]  # letter on the edge into each node
        self.current = 0

    def _child(self, node: int, letter: int) -> int:
        key = (node, letter)
        child = self._children.get(key)
        if child is None:
            child = len(self._parent)
            self._children[key] = child
            self._parent.append(node)
            self._depth.append(self._depth[node] + 1)
            self._last.append(letter)
        return child

    def step(self, letter: int) -> None:
        """Multiply the current position by a single generator letter."""
        if letter == 0 or abs(letter) > self.rank:
            raise ValueError(f"letter {letter} outside alphabet")
        node = self.current
        if node != 0 and self._last[node] == -letter:
            self.current = self._parent[node]
        else:
            self.current = self._child(node, letter)

    def insert_word(self, word: Sequence[int]) -> None:
        node = 0
        for letter in word:
            node = self._child(node, letter)

    def depth_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for depth in self._depth[1:]:
            counts[depth] = counts.get(depth, 0) + 1
        return counts


@dataclass(frozen=True)
class PrefixStats:
    """Distinct length-j prefixes V_j over the positions of a free-group trace."""

    rank: int
    trace_length: int
    counts: dict[int, int]
    j0: int = 64

    @property
    def max_depth(self) -> int:
        return max(self.counts) if self.counts else 0

    def count(self, j: int) -> int:
        return self.counts.get(j, 0)


def prefix_counts(trace: WalkTrace, j0: int = 64) -> PrefixStats:
    """Exact distinct-prefix counts per depth for a free-group trace."""
    if trace.descriptor.kind != "Free":
        raise ValueError("prefix statistics need a free-group trace")
    rank = trace.descriptor.rank
    trie = PrefixTrie(rank)
    singles = all(len(z.payload) == 1 for z in trace.increments)
    if singles:
        for z in trace.increments:
            trie.step(z.payload[0])
    else:
        for x in trace.positions:
            trie.insert_word(x.payload)
    return PrefixStats(rank, len(trace), trie.depth_counts(), j0)


def walk_prefix_stats(d: int, n_steps: int, seed: int, j0: int = 64,
                      measure: SymmetricMeasure | None = None) -> PrefixStats:
    """Streaming prefix counts of a uniform-measure walk on F_d.

    Uses the same seeded increment stream as generate_walk but never
    materializes positions, so long walks and many seeds stay cheap.
    """
    mu = measure if measure is not None else uniform_standard_measure(free(d))
    if any(len(g.payload) != 1 for g in mu.support):
        raise ValueError("streaming prefix stats need single-letter increments")
    letters = [g.payload[0] for g in mu.support]
    indices = sample_atom_indices(mu, n_steps, seed)
    trie = PrefixTrie(d)
    for i in indices:
        trie.step(letters[i])
    return PrefixStats(d, n_steps, trie.depth_counts(), j0)


@dataclass(frozen=True)
class LogBoundCheck:
    holds: bool
    first_violation: int | None


def log_bound_check(stats: PrefixStats, j0: int | None = None) -> LogBoundCheck:
    """True iff V_j <= log2(j) for every depth j with j0 < j <= max depth."""
    threshold = stats.j0 if j0 is None else j0
    for j in sorted(stats.counts):
        if j <= threshold:
            continue
        if 2 ** stats.counts[j] > j:  # exact form of V_j > log2(j)
            return LogBoundCheck(False, j)
    return LogBoundCheck(True, None)


def smallest_passing_j0(stats: PrefixStats) -> int:
    """The least threshold j0 for which log_bound_check holds."""
    worst = 0
    for j, v in stats.counts.items():
        if 2 ** v > j:
            worst = max(worst, j)
    return worst


# ---------------------------------------------------------------------------
# The biased reflected level walk

def return_probability(d: int) -> Fraction:
    """Exact 2d / ((2d)^2 - 2d + 1), checked against its fixed-point equation."""
    if d < 1:
        raise ValueError("d must be >= 1")
    two_d = 2 * d
    p = Fraction(two_d, two_d ** 2 - two_d + 1)
    lhs = Fraction(1, two_d) + Fraction(1, two_d) * Fraction(two_d - 1, two_d) * p
    assert lhs == p, "closed form does not solve the fixed-point equation"
    return p


@dataclass(frozen=True)
class ReflectedWalkStats:
    """Visit counts of the level walk on Z>=0 biased (2d-1)/2d up, 1/2d down.

    V_j counts arrivals at level j from below; a level is revisited when the
    walk later drops to j-1 and climbs back. Reflection at 0 forces an
    up-step. Levels within `censor_margin` of the maximum reached are
    excluded from the pooled statistics since their counts may still grow.
    """

    d: int
    steps: int
    seed: int
    visits: dict[int, int]
    final_level: int
    max_level: int
    censor_margin: int = 64

    @property
    def complete_levels(self) -> list[int]:
        top = self.max_level - self.censor_margin
        return [j for j in sorted(self.visits) if 1 <= j <= top]

    def mean_visits(self, lo: int, hi: int) -> float:
        levels = [j for j in range(lo, hi + 1)]
        if not levels:
            return 0.0
        return sum(self.visits.get(j, 0) for j in levels) / len(levels)

    @property
    def return_frequency(self) -> float:
        """Pooled fraction of arrivals that are followed by a re-arrival."""
        counts = [self.visits[j] for j in self.complete_levels]
        total = sum(counts)
        if total == 0:
            return 0.0
        return (total - len(counts)) / total

    def visit_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for j in self.complete_levels:
            v = self.visits[j]
            hist[v] = hist.get(v, 0) + 1
        return hist

    @property
    def fitted_geometric_p(self) -> float:
        """MLE of the re-arrival probability from the visit histogram."""
        counts = [self.visits[j] for j in self.complete_levels]
        total = sum(counts)
        if total == 0:
            return 0.0
        return 1.0 - len(counts) / total


def reflected_biased_walk(d: int, steps: int, seed: int,
                          censor_margin: int = 64) -> ReflectedWalkStats:
    """Simulate the level walk and tabulate per-level arrival counts."""
    if d < 1 or steps < 0:
        raise ValueError("need d >= 1 and steps >= 0")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    two_d = 2 * d
    threshold = round(Fraction(two_d - 1, two_d) * (1 << 64))
    ups = rng.integers(0, 1 << 64, size=steps, dtype=np.uint64) < threshold
    level = 0
    max_level = 0
    visits: dict[int, int] = {}
    for up in ups:
        if up or level == 0:
            level += 1
            visits[level] = visits.get(level, 0) + 1
            if level > max_level:
                max_level = level
        else:
            level -= 1
    return ReflectedWalkStats(d, steps, seed, visits, level, max_level,
                              censor_margin)


def return_excursion_estimate(d: int, excursions: int, seed: int,
                              cutoff: int = 64) -> float:
    """Monte Carlo re-arrival frequency of the level walk.

    One excursion starts at a level just reached from below and ends when
    the walk either drops below the level (a return) or climbs `cutoff`
    levels above it (counted as escape; the neglected return mass is below
    (2d-1)**-cutoff). Vectorized over all excursions.
    """
    if excursions < 1:
        raise ValueError("excursions must be positive")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    two_d = 2 * d
    threshold = np.uint64(round(Fraction(two_d - 1, two_d) * (1 << 64)))
    level = np.zeros(excursions, dtype=np.int32)
    active = np.ones(excursions, dtype=bool)
    returned = np.zeros(excursions, dtype=bool)
    while active.any():
        n = int(active.sum())
        ups = rng.integers(0, 1 << 64, size=n, dtype=np.uint64) < threshold
        steps = np.where(ups, np.int32(1), np.int32(-1))
        level[active] += steps
        hit = active & (level < 0)
        returned |= hit
        active &= (level >= 0) & (level < cutoff)
    return float(returned.mean())


# ---------------------------------------------------------------------------
# Cancellation

def cancel(x: GroupElement, y: GroupElement) -> int:
    """Number of letters cancelled in the product of reduced words x * y."""
    if x.descriptor != y.descriptor or x.descriptor.kind != "Free":
        raise ValueError("cancel needs two words from one free group")
    return _cancel_words(x.payload, y.payload)


def _cancel_words(u: Sequence[int], v: Sequence[int]) -> int:
    c = 0
    limit = min(len(u), len(v))
    while c < limit and u[len(u) - 1 - c] == -v[c]:
        c += 1
    return c


def random_reduced_words(d: int, length: int, count: int,
                         rng: np.random.Generator) -> np.ndarray:
    """Uniform reduced words as a (count, length) array of signed letters.

    First letter uniform over the 2d letters, each later letter uniform over
    the 2d - 1 letters that do not cancel the previous one.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    two_d = 2 * d
    # Letters are coded 0..2d-1: code k < d is letter k+1, else -(k-d+1).
    codes = np.empty((count, length), dtype=np.int16)
    codes[:, 0] = rng.integers(0, two_d, size=count, dtype=np.int16)
    for pos in range(1, length):
        prev = codes[:, pos - 1]
        inverse = np.where(prev < d, prev + d, prev - d)
        draw = rng.integers(0, two_d - 1, size=count, dtype=np.int16)
        codes[:, pos] = draw + (draw >= inverse)
    return np.where(codes < d, codes + 1, -(codes - d + 1)).astype(np.int16)


@dataclass(frozen=True)
class ExceedanceRow:
    length: int
    trials: int
    exceed_count: int

    @property
    def empirical(self) -> float:
        return self.exceed_count / self.trials

    @property
    def log_length(self) -> float:
        return math.log2(self.length)

    def bound(self, d: int) -> float:
        return (2 * d - 1) ** -math.log2(self.length)


@dataclass(frozen=True)
class CancellationSample:
    """Sampled (word length, cancellation) pairs plus the exceedance table."""

    d: int
    seed: int
    pool: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...] = field(default=())
    samples: tuple[tuple[int, int], ...] = field(default=())
    table: tuple[ExceedanceRow, ...] = field(default=())


def cancellation_experiment(d: int, trials: int,
                            pool: Sequence[GroupElement] | Sequence[Sequence[int]],
                            seed: int,
                            lengths: Sequence[int] = (16, 64, 256),
                            keep_samples: int = 1000,
                            chunk: int = 20_000) -> CancellationSample:
    """Estimate Pr(cancel(X, w) > log2 s) for uniform reduced X of length s.

    Each trial pairs a fresh X with a pool word chosen uniformly; the
    exceedance count per length is compared against the analytic bound
    (2d-1)**(-log2 s) by the caller. Trials are processed in chunks to
    bound memory; only the first `keep_samples` raw pairs per length are
    retained.
    """
    if trials < 1 or not pool:
        raise ValueError("need trials >= 1 and a nonempty pool")
    words = []
    for w in pool:
        letters = tuple(w.payload if isinstance(w, GroupElement) else w)
        if not letters:
            raise ValueError("pool words must be nonempty")
        if any(a == -b for a, b in zip(letters, letters[1:])):
            raise ValueError("pool words must be reduced")
        words.append(np.array(letters, dtype=np.int16))
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    rows = []
    kept: list[tuple[int, int]] = []
    for s in lengths:
        exceed = 0
        kept_here = 0
        done = 0
        while done < trials:
            batch = min(chunk, trials - done)
            xs = random_reduced_words(d, s, batch, rng)
            which = rng.integers(0, len(words), size=batch)
            cancels = np.zeros(batch, dtype=np.int64)
            for wi, w in enumerate(words):
                mask = which == wi
                if not mask.any():
                    continue
                sub = xs[mask]
                m = min(s, len(w))
                # sub[:, s-1-t] must equal -w[t] for all t < cancel
                agree = sub[:, s - 1 - np.arange(m)] == -w[: m]
                cancels[mask] = np.logical_and.accumulate(agree, axis=1).sum(axis=1)
            exceed += int((cancels > math.log2(s)).sum())
            if kept_here < keep_samples:
                take = cancels[: keep_samples - kept_here]
                kept.extend((s, int(c)) for c in take)
                kept_here += len(take)
            done += batch
        rows.append(ExceedanceRow(s, trials, exceed))
    return CancellationSample(d, seed, tuple(tuple(int(x) for x in w) for w in words),
                              tuple(lengths), tuple(kept), tuple(rows))


def cancellation_bound(d: int, s: int) -> float:
    """The tail bound (2d-1)**(-log2 s)."""
    return (2 * d - 1) ** -math.log2(s)


# ---------------------------------------------------------------------------
# Sphere growth of a closure

@dataclass(frozen=True)
class SphereGrowthProfile:
    rank: int
    counts: dict[int, int]  # radius -> closure elements of that word length
    slope: float
    ambient_slope: float

    @property
    def below_four_growth(self) -> bool:
        """Whether the fitted log2 slope stays under 2 (the 4**r line)."""
        return self.slope < 2.0


def sphere_growth_profile(result: ClosureResult) -> SphereGrowthProfile:
    """Per-radius element counts of a free-group closure and their log2 slope."""
    if result.descriptor.kind != "Free":
        raise ValueError("sphere growth profile needs a free-group closure")
    d = result.descriptor.rank
    counts: dict[int, int] = {}
    for g in result.elements:
        r = word_length(g)
        counts[r] = counts.get(r, 0) + 1
    pts = [(r, math.log2(c)) for r, c in sorted(counts.items()) if r > 0]
    if len(pts) < 2:
        slope = 0.0
    else:
        n = len(pts)
        mx = sum(p[0] for p in pts) / n
        my = sum(p[1] for p in pts) / n
        denom = sum((p[0] - mx) ** 2 for p in pts)
        slope = sum((p[0] - mx) * (p[1] - my) for p in pts) / denom
    return SphereGrowthProfile(d, counts, slope, math.log2(2 * d - 1))
