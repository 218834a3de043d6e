from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

import pytest

from graphcond.condensation import permutation_sign
from graphcond.pfaffian import (
    NotSkewError,
    SkewMatrix,
    block_skew,
    determinant,
    pfaffian,
    pfaffian_block,
    pfaffian_expand_row,
    swap_pair,
)


def leibniz_det(M):
    n = len(M)
    total = 0
    for p in permutations(range(n)):
        term = permutation_sign(p)
        for i in range(n):
            term *= M[i][p[i]]
        total += term
    return total


def random_skew(rng, n, lo=-9, hi=9):
    return SkewMatrix.from_upper(n, lambda i, j: rng.randint(lo, hi))


def test_two_by_two():
    assert pfaffian([[0, 7], [-7, 0]]) == 7


def test_four_by_four():
    vals = dict(zip([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], range(1, 7)))
    A = SkewMatrix.from_upper(4, lambda i, j: vals[i, j])
    assert pfaffian(A) == 1 * 6 - 2 * 5 + 3 * 4 == 8


def test_empty():
    assert pfaffian(SkewMatrix([])) == 1


def test_odd_dimension_refused():
    rng = random.Random(0)
    with pytest.raises(NotSkewError):
        pfaffian(random_skew(rng, 5))


def test_not_skew():
    with pytest.raises(NotSkewError):
        SkewMatrix([[0, 1], [1, 0]])
    with pytest.raises(NotSkewError):
        SkewMatrix([[1, 1], [-1, 0]])


def test_determinant_examples():
    assert determinant([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([]) == 1


def test_determinant_against_leibniz():
    rng = random.Random(1)
    for n in range(1, 6):
        for _ in range(10):
            M = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            assert determinant(M) == leibniz_det(M)


def test_determinant_rational_stays_exact():
    M = [[Fraction(1, 5), 1], [-1, 1]]
    d = determinant(M)
    assert d == Fraction(6, 5) and isinstance(d, Fraction)
    M = [[1, Fraction(1, 2), 1], [-1, 1, Fraction(1, 3)], [-1, -1, 1]]
    assert determinant(M) == leibniz_det(M)


def test_square_equals_det():
    rng = random.Random(2)
    for n in (2, 4, 6, 8):
        for _ in range(5):
            A = random_skew(rng, n)
            assert pfaffian(A) ** 2 == determinant(A.tolist())


def test_row_expansion_agrees():
    rng = random.Random(3)
    A = random_skew(rng, 6)
    for r in range(6):
        assert pfaffian_expand_row(A, r) == pfaffian(A)


def test_swap_pair():
    A = SkewMatrix([[0, 5], [-5, 0]])
    B, s = swap_pair(A, 0, 1)
    assert s == -1 and pfaffian(B) == -5
    C, s2 = swap_pair(B, 0, 1)
    assert C == A and s * s2 == 1


def test_block_form():
    assert pfaffian_block([[3]]) == 3
    assert pfaffian_block([[1, 2], [3, 4]]) == 2
    rng = random.Random(4)
    for k in range(1, 6):
        B = [[rng.randint(-5, 5) for _ in range(k)] for _ in range(k)]
        assert pfaffian_block(B) == pfaffian(block_skew(B))
