"""Integer lattice subsemigroup analysis, all in exact arithmetic.

Three tools: Smith normal form over the integers (with the unimodular
transforms), a decision procedure for whether the origin lies strictly
inside the convex hull of a vector set (producing either a weak separating
half-space or a positive combination certificate), and the resulting
classification of the subsemigroup generated by integer vectors as Full,
inside a proper subgroup, or trapped in a closed half-space.

Boundary convention: vector sets lying in a hyperplane through the origin
count as half-space trapped with a weak inequality, so the positive
certificate is returned only when the origin is interior to the hull. In
that case the semigroup generated equals the group generated and the
classification is exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Vec = tuple[int, ...]


def _as_vectors(vectors: Sequence[Sequence[int]]) -> list[Vec]:
    vecs = [tuple(int(x) for x in v) for v in vectors]
    if not vecs:
        raise ValueError("need at least one vector")
    d = len(vecs[0])
    if d == 0 or any(len(v) != d for v in vecs):
        raise ValueError("vectors must share one positive dimension")
    return vecs


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _primitive(v: Vec) -> Vec:
    g = math.gcd(*[abs(x) for x in v]) if any(v) else 0
    return tuple(x // g for x in v) if g > 1 else v


# ---------------------------------------------------------------------------
# Smith normal form

@dataclass(frozen=True)
class SmithDecomposition:
    """U * A * V = D with U, V unimodular and D diagonal, divisibility chain."""

    matrix: tuple[Vec, ...]
    left: tuple[Vec, ...]
    right: tuple[Vec, ...]
    diagonal: tuple[int, ...]


def smith_normal_form(rows: Sequence[Sequence[int]]) -> SmithDecomposition:
    original = _as_vectors(rows)
    a = [list(r) for r in original]
    n, d = len(a), len(a[0])
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(d)] for i in range(d)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, factor):
        a[dst] = [x + factor * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + factor * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, factor):
        for row in a:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    t = 0
    while t < min(n, d):
        pivot = None
        for i in range(t, n):
            for j in range(t, d):
                if a[i][j] and (pivot is None
                                or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # Euclid steps until the pivot divides its whole row and column.
            progressed = False
            for i in range(t + 1, n):
                if a[i][t] % a[t][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    swap_rows(i, t)
                    progressed = True
                    break
            if progressed:
                continue
            for j in range(t + 1, d):
                if a[t][j] % a[t][t]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    swap_cols(j, t)
                    progressed = True
                    break
            if progressed:
                continue
            for i in range(t + 1, n):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, d):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
            violation = None
            for i in range(t + 1, n):
                for j in range(t + 1, d):
                    if a[i][j] % a[t][t]:
                        violation = i
                        break
                if violation is not None:
                    break
            if violation is None:
                break
            add_row(t, violation, 1)
        t += 1

    for i in range(min(n, d)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    diagonal = tuple(a[i][i] for i in range(min(n, d)))
    return SmithDecomposition(
        tuple(tuple(r) for r in original),
        tuple(tuple(r) for r in u),
        tuple(tuple(r) for r in v),
        diagonal,
    )


def integer_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Bareiss determinant of a square integer matrix."""
    m = [list(r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class LatticeBasisReport:
    """Rank, Smith diagonal and subgroup index for a set of integer vectors."""

    vectors: tuple[Vec, ...]
    rank: int
    smith_diagonal: tuple[int, ...]
    index: int | None  # None means infinite (rank-deficient)


def subgroup_index(vectors: Sequence[Sequence[int]]) -> LatticeBasisReport:
    """Smith-form report on the subgroup of Z^d generated by the vectors."""
    vecs = _as_vectors(vectors)
    d = len(vecs[0])
    snf = smith_normal_form(vecs)
    nonzero = [x for x in snf.diagonal if x]
    rank = len(nonzero)
    index = math.prod(nonzero) if rank == d else None
    return LatticeBasisReport(tuple(vecs), rank, snf.diagonal, index)


# ---------------------------------------------------------------------------
# Exact linear algebra helpers (Fractions)

def _row_reduce(rows: list[list[Fraction]]) -> int:
    """In-place reduced echelon form; returns the rank."""
    if not rows:
        return 0
    n, width = len(rows), len(rows[0])
    rank = 0
    for col in range(width):
        pivot = next((i for i in range(rank, n) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col]
        rows[rank] = [x / inv for x in rows[rank]]
        for i in range(n):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == n:
            break
    return rank


def _rank(vectors: Sequence[Vec]) -> int:
    return _row_reduce([[Fraction(x) for x in v] for v in vectors])


def _kernel_vector(vectors: Sequence[Vec], d: int) -> Vec | None:
    """Some nonzero integer vector orthogonal to all inputs, if one exists."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = _row_reduce(rows)
    if rank >= d:
        return None
    pivots = []
    for r in range(rank):
        pivots.append(next(j for j in range(d) if rows[r][j]))
    free = next(j for j in range(d) if j not in pivots)
    sol = [Fraction(0)] * d
    sol[free] = Fraction(1)
    for r, p in enumerate(pivots):
        sol[p] = -rows[r][free]
    denom = math.lcm(*[f.denominator for f in sol])
    return _primitive(tuple(int(f * denom) for f in sol))


def _solve_unique(basis: Sequence[Sequence[Fraction | int]],
                  target: Sequence[Fraction | int]) -> list[Fraction] | None:
    """Unique exact solution of sum t_i b_i = target, else None."""
    d = len(target)
    k = len(basis)
    rows = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(target[i])]
            for i in range(d)]
    n = len(rows)
    rank = 0
    where = [-1] * k
    for col in range(k):
        pivot = next((i for i in range(rank, n) if rows[i][col]), None)
        if pivot is None:
            return None  # dependent set
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col]
        rows[rank] = [x / inv for x in rows[rank]]
        for i in range(n):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        where[col] = rank
        rank += 1
    for i in range(rank, n):
        if rows[i][k]:
            return None  # inconsistent
    return [rows[where[c]][k] for c in range(k)]


def _solve_nonneg(basis: Sequence[Vec], target: Vec) -> list[Fraction] | None:
    """Solve sum t_i b_i = target exactly; None unless unique and all t >= 0."""
    sol = _solve_unique(basis, target)
    if sol is None or any(t < 0 for t in sol):
        return None
    return sol


# ---------------------------------------------------------------------------
# Cone witnesses

@dataclass(frozen=True)
class HalfSpaceWitness:
    """Nonzero normal with <normal, v> >= 0 for every input vector."""

    normal: Vec


@dataclass(frozen=True)
class ZeroInHullWitness:
    """Positive integer combination of input points summing to zero.

    The points span the ambient space, certifying that the origin is
    interior to the convex hull (so the generated semigroup is a group).
    """

    points: tuple[Vec, ...]
    coefficients: tuple[int, ...]


ConeWitness = HalfSpaceWitness | ZeroInHullWitness


def _separator_candidates(vecs: list[Vec], d: int) -> list[Vec]:
    candidates: list[Vec] = []
    seen: set[Vec] = set()
    if d == 1:
        subsets: list[tuple[int, ...]] = [()]
    else:
        subsets = list(itertools.combinations(range(len(vecs)), d - 1))
    for subset in subsets:
        rows = [vecs[i] for i in subset]
        if d == 1:
            normal: Vec | None = (1,)
        else:
            minors = []
            for j in range(d):
                sub = [[row[c] for c in range(d) if c != j] for row in rows]
                minors.append((-1) ** j * integer_determinant(sub))
            normal = tuple(minors)
            if not any(normal):
                continue
            normal = _primitive(normal)
        for cand in (normal, tuple(-x for x in normal)):
            if cand not in seen:
                seen.add(cand)
                candidates.append(cand)
    return candidates


def zero_in_convex_hull(vectors: Sequence[Sequence[int]]) -> ConeWitness:
    """Decide whether the origin is interior to the convex hull.

    Returns a HalfSpaceWitness whenever some nonzero normal has nonnegative
    inner product with every vector (including all boundary cases), and
    otherwise a verified ZeroInHullWitness: a positive integer combination
    of input points summing to zero whose points span the space.
    """
    vecs = _as_vectors(vectors)
    d = len(vecs[0])
    nonzero = []
    seen = set()
    for v in vecs:
        if any(v) and v not in seen:
            seen.add(v)
            nonzero.append(v)
    if not nonzero:
        return HalfSpaceWitness(tuple([1] + [0] * (d - 1)))
    if _rank(nonzero) < d:
        kernel = _kernel_vector(nonzero, d)
        assert kernel is not None
        return HalfSpaceWitness(kernel)
    valid = [n for n in _separator_candidates(nonzero, d)
             if all(_dot(n, v) >= 0 for v in nonzero)]
    if valid:
        valid.sort()
        total = tuple(sum(col) for col in zip(*valid))
        if any(total) and all(_dot(total, v) >= 0 for v in nonzero):
            return HalfSpaceWitness(_primitive(total))
        return HalfSpaceWitness(valid[0])
    return _positive_certificate(nonzero, d)


def _positive_certificate(vecs: list[Vec], d: int) -> ZeroInHullWitness:
    base_idx: list[int] = []
    for i, v in enumerate(vecs):
        if _rank([vecs[j] for j in base_idx] + [v]) > len(base_idx):
            base_idx.append(i)
        if len(base_idx) == d:
            break
    assert len(base_idx) == d
    target = tuple(-sum(vecs[i][c] for i in base_idx) for c in range(d))
    coeffs: dict[int, Fraction] = {i: Fraction(1) for i in base_idx}
    if any(target):
        found = None
        for size in range(1, d + 1):
            for subset in itertools.combinations(range(len(vecs)), size):
                sol = _solve_nonneg([vecs[i] for i in subset], target)
                if sol is not None:
                    found = (subset, sol)
                    break
            if found:
                break
        assert found is not None, "origin interior but no conic combination found"
        for i, t in zip(*found):
            if t:
                coeffs[i] = coeffs.get(i, Fraction(0)) + t
    indices = sorted(coeffs)
    denom = math.lcm(*[coeffs[i].denominator for i in indices])
    ints = [int(coeffs[i] * denom) for i in indices]
    g = math.gcd(*ints)
    if g > 1:
        ints = [x // g for x in ints]
    witness = ZeroInHullWitness(tuple(vecs[i] for i in indices), tuple(ints))
    _verify_certificate(witness, d)
    return witness


def _verify_certificate(witness: ZeroInHullWitness, d: int) -> None:
    assert all(t > 0 for t in witness.coefficients)
    combo = [sum(t * p[c] for t, p in zip(witness.coefficients, witness.points))
             for c in range(d)]
    assert not any(combo), "certificate does not sum to zero"
    assert _rank(list(witness.points)) == d, "certificate does not span"


# ---------------------------------------------------------------------------
# Classification

FULL = "Full"
IN_PROPER_SUBGROUP = "InProperSubgroup"
IN_HALF_SPACE = "InHalfSpace"


@dataclass(frozen=True)
class SubsemigroupClassification:
    kind: str
    normal: Vec | None = None
    index: int | None = None
    rank: int | None = None
    report: LatticeBasisReport | None = None
    hull_witness: ZeroInHullWitness | None = None

    def __str__(self) -> str:
        if self.kind == FULL:
            return FULL
        if self.kind == IN_HALF_SPACE:
            return f"InHalfSpace(normal=({','.join(str(x) for x in self.normal)}))"
        if self.index is not None:
            return f"InProperSubgroup(index={self.index})"
        return f"InProperSubgroup(rank={self.rank})"


def _span_coordinates(vecs: list[Vec]) -> tuple[list[Vec], list[Vec]] | None:
    """Integer coordinates of the vectors in a basis of their span.

    Returns (basis, coordinate vectors) or None when the vectors already
    span the whole space. Each coordinate vector is scaled by a positive
    integer, which preserves both half-space trapping and the existence of
    positive combinations summing to zero.
    """
    d = len(vecs[0])
    basis: list[Vec] = []
    for v in vecs:
        if _rank(basis + [v]) > len(basis):
            basis.append(v)
    r = len(basis)
    if r == d:
        return None
    coords = []
    for v in vecs:
        sol = _solve_unique(basis, v)
        assert sol is not None
        denom = math.lcm(*[f.denominator for f in sol])
        coords.append(tuple(int(f * denom) for f in sol))
    return basis, coords


def _lift_normal(basis: list[Vec], span_normal: Vec) -> Vec:
    """Ambient normal whose inner products match a normal in span coordinates."""
    r, d = len(basis), len(basis[0])
    gram = [[_dot(basis[i], basis[j]) for j in range(r)] for i in range(r)]
    c = _solve_unique([tuple(gram[i][j] for i in range(r)) for j in range(r)],
                      span_normal)
    assert c is not None
    lifted = [sum(c[k] * basis[k][i] for k in range(r)) for i in range(d)]
    denom = math.lcm(*[f.denominator for f in lifted])
    return _primitive(tuple(int(f * denom) for f in lifted))


def classify_subsemigroup(
        generators: Sequence[Sequence[int]]) -> SubsemigroupClassification:
    """Trichotomy for the subsemigroup of Z^d generated by the vectors.

    InHalfSpace when some half-space contains all generators with at least
    one of them off its boundary (the origin is not in the relative interior
    of the hull). Otherwise the semigroup equals the group the generators
    generate, and the Smith report decides exactly: rank deficit or index
    above one gives InProperSubgroup, index one gives Full.
    """
    vecs = _as_vectors(generators)
    d = len(vecs[0])
    nonzero = [v for v in dict.fromkeys(vecs) if any(v)]
    if not nonzero:
        report = subgroup_index(vecs)
        return SubsemigroupClassification(IN_PROPER_SUBGROUP, rank=0,
                                          report=report)
    reduction = _span_coordinates(nonzero)
    if reduction is None:
        witness = zero_in_convex_hull(nonzero)
        if isinstance(witness, HalfSpaceWitness):
            return SubsemigroupClassification(IN_HALF_SPACE,
                                              normal=witness.normal)
        report = subgroup_index(vecs)
        if report.index == 1:
            return SubsemigroupClassification(FULL, report=report,
                                              hull_witness=witness)
        return SubsemigroupClassification(IN_PROPER_SUBGROUP,
                                          index=report.index,
                                          rank=report.rank, report=report,
                                          hull_witness=witness)
    basis, coords = reduction
    witness = zero_in_convex_hull(coords)
    if isinstance(witness, HalfSpaceWitness):
        normal = _lift_normal(basis, witness.normal)
        assert all(_dot(normal, v) >= 0 for v in nonzero)
        return SubsemigroupClassification(IN_HALF_SPACE, normal=normal)
    report = subgroup_index(vecs)
    return SubsemigroupClassification(IN_PROPER_SUBGROUP, rank=report.rank,
                                      report=report)
