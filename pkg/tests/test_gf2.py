from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpc.fixtures import code_1133, hamming_74_parity_check
from cpc.gf2 import Gf2Matrix, multiply, row_space_equal, rref


def matrices(max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(0, 1), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            ).map(Gf2Matrix)
        )
    )


def test_rejects_non_binary_entries():
    with pytest.raises(ValueError):
        Gf2Matrix([[0, 2]])


def test_empty_matrices_allowed():
    m = Gf2Matrix.zeros(0, 3)
    assert m.rows == 0 and m.cols == 3
    assert rref(m).rank == 0


def test_multiply_known_product():
    # (mb)^T @ mp for the [[11,3,3]] code, checked by hand against the
    # overlap of check columns.
    code = code_1133()
    product = multiply(code.mb.transpose(), code.mp)
    assert product.data.tolist() == [
        [0, 1, 1, 0],
        [1, 0, 1, 0],
        [1, 1, 0, 0],
        [0, 0, 0, 0],
    ]


def test_multiply_identity_and_zero():
    code = code_1133()
    eye = Gf2Matrix.identity(3)
    assert multiply(eye, code.mb) == code.mb
    zero = Gf2Matrix.zeros(2, 3)
    assert multiply(zero, code.mb) == Gf2Matrix.zeros(2, 4)


def test_multiply_dimension_mismatch():
    with pytest.raises(ValueError):
        multiply(Gf2Matrix.zeros(2, 3), Gf2Matrix.zeros(2, 3))


def test_rref_identity_and_zero():
    eye = Gf2Matrix.identity(4)
    res = rref(eye)
    assert res.reduced == eye and res.rank == 4
    res = rref(Gf2Matrix.zeros(3, 3))
    assert res.rank == 0 and res.pivots == ()


def test_rref_hamming_rank():
    # independent oracle: enumerate all row combinations of the 3x7 matrix
    h = hamming_74_parity_check()
    combos = set()
    for bits in range(8):
        acc = np.zeros(7, dtype=np.uint8)
        for i in range(3):
            if (bits >> i) & 1:
                acc ^= h.data[i]
        combos.add(tuple(acc))
    # 2^rank distinct sums
    assert len(combos) == 8
    assert rref(h).rank == 3


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rref_idempotent_and_transform(m):
    res = rref(m)
    again = rref(res.reduced)
    assert again.reduced == res.reduced
    assert multiply(res.transform, m) == res.reduced
    # transform is invertible: full rank square matrix
    assert rref(res.transform).rank == m.rows


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**30))
@settings(max_examples=40, deadline=None)
def test_multiply_associative(a_rows, inner1, inner2, b_cols, seed):
    rng = np.random.Generator(np.random.Philox(seed))
    a = Gf2Matrix(rng.integers(0, 2, size=(a_rows, inner1), dtype=np.uint8))
    b = Gf2Matrix(rng.integers(0, 2, size=(inner1, inner2), dtype=np.uint8))
    c = Gf2Matrix(rng.integers(0, 2, size=(inner2, b_cols), dtype=np.uint8))
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_row_space_equal_row_operations():
    m = hamming_74_parity_check()
    permuted = Gf2Matrix(m.data[[2, 0, 1]])
    assert row_space_equal(m, permuted)
    summed = m.data.copy()
    summed[0] = summed[0] ^ summed[1]
    assert row_space_equal(m, Gf2Matrix(summed))


def test_row_space_not_equal():
    assert not row_space_equal(Gf2Matrix.identity(2), Gf2Matrix([[1, 0]]))
    with pytest.raises(ValueError):
        row_space_equal(Gf2Matrix.identity(2), Gf2Matrix.identity(3))
