import random

import pytest
from hypothesis import given, settings, strategies as st

from algrec.lattice import (
    FULL,
    IN_HALF_SPACE,
    IN_PROPER_SUBGROUP,
    HalfSpaceWitness,
    ZeroInHullWitness,
    classify_subsemigroup,
    integer_determinant,
    smith_normal_form,
    subgroup_index,
    zero_in_convex_hull,
)
from oracles import GridClosure


def mat_mul(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(len(y)))
             for j in range(len(y[0]))] for i in range(len(x))]


def check_snf(rows):
    snf = smith_normal_form(rows)
    n, d = len(rows), len(rows[0])
    product = mat_mul(mat_mul([list(r) for r in snf.left], [list(r) for r in rows]),
                      [list(r) for r in snf.right])
    expected = [[snf.diagonal[i] if i == j and i < len(snf.diagonal) else 0
                 for j in range(d)] for i in range(n)]
    assert product == expected
    assert abs(integer_determinant(snf.left)) == 1
    assert abs(integer_determinant(snf.right)) == 1
    nonzero = [x for x in snf.diagonal if x]
    assert all(x > 0 for x in nonzero)
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    assert list(snf.diagonal) == nonzero + [0] * (len(snf.diagonal) - len(nonzero))
    return snf


def test_subgroup_index_examples():
    report = subgroup_index([(2, 0), (0, 2)])
    assert (report.rank, report.smith_diagonal, report.index) == (2, (2, 2), 4)
    assert subgroup_index([(1, 0), (0, 1)]).index == 1
    collinear = subgroup_index([(2, 4), (1, 2)])
    assert collinear.rank == 1
    assert collinear.index is None


def test_snf_fixed_cases():
    check_snf([[0]])
    check_snf([[5]])
    check_snf([[2, 4, 4]])
    check_snf([[2, 0], [0, 2]])
    check_snf([[1, 2], [3, 4]])
    check_snf([[6, 4], [4, 6], [0, 0]])
    check_snf([[0, 0], [0, 0]])


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_snf_random_matrices(n, d, seed):
    rng = random.Random(seed)
    rows = [[rng.randint(-9, 9) for _ in range(d)] for _ in range(n)]
    check_snf(rows)


def test_determinant_matches_numpy_on_small_ints():
    rng = random.Random(7)
    import numpy as np
    for _ in range(100):
        n = rng.randint(1, 4)
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert integer_determinant(m) == round(np.linalg.det(np.array(m, dtype=float)))


def test_hull_quadrant():
    witness = zero_in_convex_hull([(1, 0), (0, 1)])
    assert isinstance(witness, HalfSpaceWitness)
    assert witness.normal == (1, 1)


def test_hull_symmetric_triple():
    witness = zero_in_convex_hull([(1, 0), (0, 1), (-1, -1)])
    assert isinstance(witness, ZeroInHullWitness)
    assert witness.points == ((1, 0), (0, 1), (-1, -1))
    assert witness.coefficients == (1, 1, 1)


def test_hull_dimension_one():
    witness = zero_in_convex_hull([(2,), (-3,)])
    assert isinstance(witness, ZeroInHullWitness)
    assert witness.points == ((2,), (-3,))
    assert witness.coefficients == (3, 2)


def test_hull_boundary_cases_are_half_spaces():
    # Sets inside a hyperplane through 0 count as (weakly) trapped.
    w = zero_in_convex_hull([(1, 0), (-1, 0)])
    assert isinstance(w, HalfSpaceWitness)
    assert all(x * w.normal[0] + y * w.normal[1] == 0 for x, y in [(1, 0), (-1, 0)])
    w2 = zero_in_convex_hull([(1, 0), (-1, 0), (0, 1)])
    assert isinstance(w2, HalfSpaceWitness)


def test_hull_cross_needs_four_points():
    # No 3-point certificate exists for the coordinate cross.
    witness = zero_in_convex_hull([(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert isinstance(witness, ZeroInHullWitness)
    assert len(witness.points) == 4


def test_hull_empty_rejected():
    with pytest.raises(ValueError):
        zero_in_convex_hull([])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
                min_size=1, max_size=8))
def test_hull_witness_soundness(vectors):
    witness = zero_in_convex_hull(vectors)
    if isinstance(witness, HalfSpaceWitness):
        assert any(witness.normal)
        assert all(sum(n * x for n, x in zip(witness.normal, v)) >= 0
                   for v in vectors)
    else:
        assert all(t > 0 for t in witness.coefficients)
        combo = [sum(t * p[c] for t, p in zip(witness.coefficients, witness.points))
                 for c in range(2)]
        assert combo == [0, 0]


def test_classify_examples():
    assert classify_subsemigroup([(1, 0), (0, 1), (-1, -1)]).kind == FULL
    proper = classify_subsemigroup([(2, 0), (0, 2), (-2, -2)])
    assert proper.kind == IN_PROPER_SUBGROUP
    assert proper.index == 4
    trapped = classify_subsemigroup([(1, 0), (0, 1)])
    assert trapped.kind == IN_HALF_SPACE
    assert trapped.normal == (1, 1)


def test_classify_rank_deficit():
    line = classify_subsemigroup([(1, 1), (-1, -1)])
    assert line.kind == IN_PROPER_SUBGROUP
    assert line.rank == 1
    assert classify_subsemigroup([(0, 0)]).rank == 0


def test_classify_boundary_half_plane():
    # The upper half plane: full rank, 0 on the hull boundary, not Full.
    result = classify_subsemigroup([(1, 0), (-1, 0), (0, 1)])
    assert result.kind == IN_HALF_SPACE
    assert result.normal == (0, 1)


def test_classify_agrees_with_grid_oracle_random():
    rng = random.Random(2024)
    grid = GridClosure(23)
    for _ in range(400):
        k = rng.randint(1, 4)
        gens = [(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(k)]
        gens = [g for g in gens if g != (0, 0)]
        if not gens:
            continue
        result = classify_subsemigroup(gens)
        covers = grid.covers_ball(grid.close(gens), 5)
        assert (result.kind == FULL) == covers, (gens, result)
