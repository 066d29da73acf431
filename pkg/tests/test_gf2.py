from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from stgen.gf2 import (BitMatrix, BitVector, DimensionError, hamming_distance, mat_mul, vec_mat_mul,
                       weight, xor_add)

V = BitVector.from_str


def vectors(length):
    return st.integers(0, (1 << length) - 1).map(lambda b: BitVector(b, length))


def test_xor_examples():
    assert xor_add(V("1010"), V("0000")) == V("1010")
    assert xor_add(V("1010"), V("1010")) == V("0000")
    assert xor_add(V("1100"), V("0110")) == V("1010")


def test_weight_examples():
    assert weight(V("0000")) == 0
    assert weight(V("1011")) == 3
    assert weight(BitVector.ones(16)) == 16


def test_distance_examples():
    assert hamming_distance(V("1010"), V("1010")) == 0
    assert hamming_distance(V("0000"), V("1111")) == 4
    assert hamming_distance(V("110"), V("111")) == 1


def test_vec_mat_examples():
    M = BitMatrix.from_rows(["10", "11"])
    assert vec_mat_mul(V("00"), M) == V("00")
    assert vec_mat_mul(V("11"), M) == V("01")
    x = V("10110")
    assert vec_mat_mul(x, BitMatrix.identity(5)) == x


def test_dimension_errors():
    with pytest.raises(DimensionError):
        xor_add(V("10"), V("101"))
    with pytest.raises(DimensionError):
        hamming_distance(V("10"), V("101"))
    with pytest.raises(DimensionError):
        vec_mat_mul(V("101"), BitMatrix.identity(2))
    with pytest.raises(DimensionError):
        mat_mul(BitMatrix.identity(2), BitMatrix.identity(3))


def test_string_and_bytes_order():
    v = V("1000")
    assert v[0] == 1 and v.bits == 1
    assert BitVector.from_bytes(b"\x80").to_str() == "10000000"
    assert BitVector.from_bytes(b"\x01\xff").to_bytes() == b"\x01\xff"
    assert V("101").to_bytes() == b"\xa0"


def test_slicing_and_concat():
    v = V("110010")
    assert v[1:4] == V("100")
    assert v[:2].concat(v[2:]) == v


@given(vectors(24), vectors(24), vectors(24))
def test_xor_group_laws(a, b, c):
    assert (a ^ b) ^ c == a ^ (b ^ c)
    assert a ^ b == b ^ a
    assert a ^ a == BitVector.zeros(24)


@given(vectors(20), vectors(20))
def test_weight_of_xor_is_distance(a, b):
    assert weight(a ^ b) == hamming_distance(a, b)


@given(vectors(9), vectors(9), st.integers(0, 2**32))
def test_vec_mat_linear(x, y, seed):
    M = BitMatrix.random(9, 13, random.Random(seed))
    assert vec_mat_mul(x ^ y, M) == vec_mat_mul(x, M) ^ vec_mat_mul(y, M)


@given(st.integers(0, 2**32))
def test_matrix_ops(seed):
    rng = random.Random(seed)
    A = BitMatrix.random(5, 7, rng)
    B = BitMatrix.random(7, 3, rng)
    assert A.transpose().transpose() == A
    assert (A @ B).transpose() == B.transpose() @ A.transpose()
    assert A @ BitMatrix.identity(7) == A
    x = BitVector.random(5, rng)
    assert vec_mat_mul(x, A @ B) == vec_mat_mul(vec_mat_mul(x, A), B)
    assert A.hstack(BitMatrix.zeros(5, 2)).submatrix(0, 5, 0, 7) == A
