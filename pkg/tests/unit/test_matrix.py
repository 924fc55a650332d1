# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Unit tests for primrows.lattice.matrix
"""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from primrows.lattice.matrix import (
    IntMatrix,
    det,
    is_primitive,
    matmul,
    norm_sq,
    random_matrix,
    random_unimodular,
    trace_gram,
)

pytestmark = pytest.mark.unit

square = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(min_value=-20, max_value=20), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    )
)


class TestIntMatrix:
    def test_construction(self):
        m = IntMatrix.from_rows([[1, 2], [3, 4]])
        assert m.n == 2
        assert m[1, 0] == 3
        assert str(m) == "[[1, 2], [3, 4]]"
        assert m.transpose() == IntMatrix.from_rows([[1, 3], [2, 4]])

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            IntMatrix(rows=())
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1, 2], [3]])
        with pytest.raises(ValueError):
            IntMatrix.identity(0)

    def test_negate_row(self):
        m = IntMatrix.from_rows([[1, 2], [3, 4]])
        flipped = m.negate_row(0)
        assert flipped == IntMatrix.from_rows([[-1, -2], [3, 4]])
        assert flipped.det() == -m.det()

    def test_product(self):
        a = IntMatrix.from_rows([[1, 1], [0, 1]])
        assert a @ a == IntMatrix.from_rows([[1, 2], [0, 1]])
        with pytest.raises(ValueError):
            matmul(a, IntMatrix.identity(3))


class TestDeterminant:
    def test_examples(self):
        assert det(IntMatrix.from_rows([[1, 2], [3, 4]])) == -2
        assert det(IntMatrix.from_rows([[0, 1], [1, 0]])) == -1
        assert det(IntMatrix.from_rows([[2, 0, 0], [0, 3, 0], [0, 0, 5]])) == 30
        assert det(IntMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])) == 0
        assert det(IntMatrix.from_rows([[7]])) == 7

    @given(square)
    def test_bareiss_matches_cofactor(self, rows):
        m = IntMatrix.from_rows(rows)
        assert det(m, "bareiss") == det(m, "cofactor")

    def test_large_entries_stay_exact(self):
        big = 10**30
        m = IntMatrix.from_rows([[big, 1], [1, big]])
        assert det(m) == big * big - 1

    def test_methods(self):
        with pytest.raises(ValueError):
            det(IntMatrix.identity(2), method="lu")
        with pytest.raises(ValueError):
            det(IntMatrix.identity(5), method="cofactor")
        assert det(IntMatrix.identity(6)) == 1


class TestNormsAndRows:
    def test_norm_sq(self):
        m = IntMatrix.from_rows([[1, 2], [3, 4]])
        assert norm_sq(m) == 30
        assert m.norm_sq() == 30

    @given(square)
    def test_trace_gram_is_norm_sq(self, rows):
        m = IntMatrix.from_rows(rows)
        assert trace_gram(m) == norm_sq(m)

    def test_is_primitive(self):
        assert is_primitive((2, 3))
        assert is_primitive((0, -1, 0))
        assert not is_primitive((2, 4, 6))
        assert not is_primitive((0, 0))
        assert IntMatrix.from_rows([[1, 0], [1, 2]]).rows_primitive()
        assert not IntMatrix.from_rows([[1, 0], [0, 2]]).rows_primitive()


class TestRandom:
    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_unimodular(self, n, rng):
        for _ in range(10):
            assert det(random_unimodular(n, rng)) == 1

    def test_seeded(self):
        first = random_matrix(3, random.Random(7), 5)
        second = random_matrix(3, random.Random(7), 5)
        assert first == second
        assert all(-5 <= x <= 5 for row in first.rows for x in row)
