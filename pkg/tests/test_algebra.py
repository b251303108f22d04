import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcdist.algebra import (
    BinaryMatrix,
    Echelon,
    PauliVector,
    bits_of,
    in_row_span,
    kernel_basis,
    kernel_words,
    parity,
    popcount,
    rank_gf2,
    rref,
    span,
    trace_inner_product,
    weight,
    word_from_string,
    word_to_string,
)


def paulis(n):
    return st.builds(lambda u, v: PauliVector(n, u, v), st.integers(0, 2**n - 1), st.integers(0, 2**n - 1))


def matrices(max_rows=8, max_cols=10):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.integers(0, 2**c - 1), max_size=max_rows).map(lambda rows: BinaryMatrix(tuple(rows), c))
    )


def numpy_rank(m: BinaryMatrix) -> int:
    a = m.to_array().copy()
    r = 0
    for c in range(a.shape[1] if a.size else 0):
        piv = next((i for i in range(r, a.shape[0]) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        for i in range(a.shape[0]):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return r


def test_bit_helpers():
    assert popcount(0b1011) == 3
    assert parity(0b1011) == 1 and parity(0b11) == 0
    assert list(bits_of(0b10010)) == [1, 4]
    assert word_from_string("1101") == 0b1011
    assert word_to_string(0b1011, 5) == "11010"


def test_pauli_label_round_trip():
    e = PauliVector.from_label("IXYZ")
    assert e.label() == "IXYZ"
    assert weight(e) == 3
    assert e.support == 0b1110
    assert PauliVector.from_packed(4, e.packed) == e


def test_pauli_rejects_bad_input():
    with pytest.raises(ValueError):
        PauliVector.from_label("IXQ")
    with pytest.raises(ValueError):
        PauliVector(2, 0b100, 0)


def test_single_qubit_commutation():
    x, y, z = (PauliVector.from_label(s) for s in "XYZ")
    assert trace_inner_product(x, z) == 1
    assert trace_inner_product(x, y) == 1
    assert trace_inner_product(y, z) == 1
    assert trace_inner_product(x, x) == 0


@given(paulis(6), paulis(6))
def test_trace_product_symmetric(a, b):
    assert trace_inner_product(a, b) == trace_inner_product(b, a)


@given(paulis(6), paulis(6), paulis(6))
def test_trace_product_bilinear(a, b, c):
    assert trace_inner_product(a + b, c) == trace_inner_product(a, c) ^ trace_inner_product(b, c)


@given(paulis(7))
def test_weight_is_support_size(e):
    assert weight(e) == sum(ch != "I" for ch in e.label())


def test_sort_key_orders_u_then_v():
    a = PauliVector.from_label("ZI")
    b = PauliVector.from_label("XI")
    assert a.sort_key() > b.sort_key()


def test_binary_matrix_array_round_trip():
    m = BinaryMatrix.from_strings(["110", "011"])
    assert np.array_equal(m.to_array(), np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8))
    assert BinaryMatrix.from_array(m.to_array()) == m
    assert m.transpose().to_strings() == ["10", "11", "01"]
    assert m.column_weights() == [1, 2, 1]


@settings(max_examples=60)
@given(matrices())
def test_rank_matches_numpy_elimination(m):
    assert rank_gf2(m) == numpy_rank(m)


@settings(max_examples=60)
@given(matrices())
def test_kernel_is_orthogonal_and_full(m):
    basis = kernel_basis(m)
    assert len(basis) == m.ncols - rank_gf2(m)
    for x in basis:
        assert m.mul_vec(x) == 0
    assert rank_gf2(BinaryMatrix(tuple(basis), m.ncols)) == len(basis)


@settings(max_examples=60)
@given(matrices(), st.integers(0, 2**10 - 1))
def test_row_span_membership(m, coeffs):
    x = 0
    for i, r in enumerate(m.rows):
        if (coeffs >> i) & 1:
            x ^= r
    assert in_row_span(m, x)
    e = Echelon(m.rows)
    assert (x in e) and e.reduce(x) == 0


def test_in_row_span_rejects_wide_vector():
    with pytest.raises(ValueError):
        in_row_span(BinaryMatrix((0b1,), 2), 0b100)


def test_hamming_circulant_rank():
    rows = ["1110100"]
    for _ in range(6):
        rows.append(rows[-1][-1] + rows[-1][:-1])
    assert rank_gf2(BinaryMatrix.from_strings(rows)) == 3


def test_rref_custom_order():
    rows, pivots = rref([0b011, 0b110], 3, order=[2, 1, 0])
    assert pivots == [2, 1]
    for r, p in zip(rows, pivots):
        others = [q for q in pivots if q != p]
        assert (r >> p) & 1 and not any((r >> q) & 1 for q in others)


def test_span_enumerates_every_combination():
    basis = [0b001, 0b010, 0b100]
    assert sorted(span(basis)) == list(range(8))
    assert next(iter(span(basis))) == 0


def test_kernel_words_empty_rows():
    assert sorted(kernel_words([], 3)) == [1, 2, 4]
