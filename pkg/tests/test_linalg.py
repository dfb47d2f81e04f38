import random
from fractions import Fraction

import pytest

from excisionlab.linalg import (
    IncrementalSpan,
    NotInSpan,
    SparseMatrix,
    SparseVector,
    Unsolvable,
    image_basis,
    in_span,
    invert,
    kernel_basis,
    parse_scalar,
    rank,
    rref,
    solve,
)


def test_parse_scalar_accepts_exact_rationals():
    assert parse_scalar("-3/2") == Fraction(-3, 2)
    assert parse_scalar("7") == 7
    assert parse_scalar("0") == 0


@pytest.mark.parametrize("bad", ["1.5", "1e3", "3/0", "3/-2", " 1", "", None, "1/2/3"])
def test_parse_scalar_rejects_non_rationals(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_sparse_vector_drops_zeros_and_checks_range():
    v = SparseVector(3, {0: 1, 1: 0})
    assert v.entries == {0: Fraction(1)}
    with pytest.raises(ValueError):
        SparseVector(2, {2: 1})


def test_rref_identity():
    m = SparseMatrix.from_rows([[1, 0], [0, 1]])
    reduced, pivots = rref(m)
    assert reduced == m
    assert pivots == [0, 1]


def test_rref_zero_matrix():
    m = SparseMatrix(2, 3)
    reduced, pivots = rref(m)
    assert reduced == m
    assert pivots == []


def test_rref_rank_one():
    # hand Gaussian elimination: R2 <- R2 - 2 R1
    m = SparseMatrix.from_rows([[1, 2], [2, 4]])
    reduced, pivots = rref(m)
    assert reduced.to_dense() == [[1, 2], [0, 0]]
    assert pivots == [0]


def test_solve_identity():
    m = SparseMatrix.from_rows([[1, 0], [0, 1]])
    v = SparseVector.from_list([5, -7])
    assert solve(m, v) == v


def test_solve_zeroes_free_variables():
    m = SparseMatrix.from_rows([[1, 1]])
    x = solve(m, SparseVector.from_list([2]))
    assert x == SparseVector.from_list([2, 0])


def test_solve_inconsistent():
    m = SparseMatrix.from_rows([[1], [1]])
    result = solve(m, SparseVector.from_list([1, 2]))
    assert isinstance(result, Unsolvable)


def test_solve_rejects_dimension_mismatch():
    m = SparseMatrix.from_rows([[1, 0]])
    with pytest.raises(ValueError):
        solve(m, SparseVector.from_list([1, 2]))


def test_kernel_of_identity_is_empty():
    assert kernel_basis(SparseMatrix.from_rows([[1, 0], [0, 1]])) == []


def test_image_of_zero_matrix_is_empty():
    assert image_basis(SparseMatrix(3, 2)) == []


def test_in_span_standard_basis():
    v = SparseVector.from_list([1, 1])
    basis = [SparseVector.from_list([1, 0]), SparseVector.from_list([0, 1])]
    assert in_span(v, basis) == [1, 1]


def test_in_span_failure():
    v = SparseVector.from_list([0, 1])
    assert isinstance(in_span(v, [SparseVector.from_list([1, 0])]), NotInSpan)


def test_in_span_empty_basis():
    assert in_span(SparseVector(2), []) == []
    assert isinstance(in_span(SparseVector.from_list([1, 0]), []), NotInSpan)


def _random_matrix(rng, rows, cols, density=0.4):
    entries = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                entries[(r, c)] = Fraction(rng.randint(-4, 4))
    return SparseMatrix(rows, cols, {k: v for k, v in entries.items() if v})


def test_rank_nullity_on_random_matrices():
    rng = random.Random(2024)
    for _ in range(40):
        m = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        assert len(kernel_basis(m)) + rank(m) == m.cols


def test_kernel_vectors_annihilate():
    rng = random.Random(7)
    for _ in range(25):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
        for v in kernel_basis(m):
            assert m.matvec(v).is_zero()


def test_solutions_are_exact_on_random_consistent_systems():
    rng = random.Random(99)
    for _ in range(25):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        x0 = SparseVector(
            m.cols, {c: Fraction(rng.randint(-3, 3)) for c in range(m.cols)}
        )
        rhs = m.matvec(x0)
        x = solve(m, rhs)
        assert not isinstance(x, Unsolvable)
        assert m.matvec(x) == rhs


def test_solve_is_deterministic():
    rng = random.Random(4)
    m = _random_matrix(rng, 5, 7)
    rhs = m.matvec(SparseVector.from_list([1, 2, 3, 0, -1, 1, 2]))
    first = solve(m, rhs)
    second = solve(m, rhs)
    assert first == second
    assert first.entries == second.entries


def test_invert_round_trip():
    m = SparseMatrix.from_rows([[2, 1], [1, 1]])
    inv = invert(m)
    prod = [[sum(m.entries.get((r, k), 0) * inv.entries.get((k, c), 0)
                 for k in range(2)) for c in range(2)] for r in range(2)]
    assert prod == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        invert(SparseMatrix.from_rows([[1, 2], [2, 4]]))


def test_incremental_span_membership():
    span = IncrementalSpan(3)
    assert span.add(SparseVector.from_list([1, 1, 0]))
    assert not span.add(SparseVector.from_list([2, 2, 0]))
    assert span.contains(SparseVector.from_list([-1, -1, 0]))
    assert not span.contains(SparseVector.from_list([1, 0, 0]))
    assert span.add(SparseVector.from_list([0, 0, 5]))
    assert len(span) == 2
