from __future__ import annotations

import json
import random

import pytest

from stgen.codes import (PRACTICAL_ROWS, ParameterError, StGenCode, StGenParams, base_catalog, base_code, build_code,
                         encode, from_descriptor, g_prefix, generator_matrix, load_code,
                         parity_check_matrix, save_code, syndrome, practical_params, to_descriptor)
from stgen.gf2 import BitMatrix, BitVector, vec_mat_mul

V = BitVector.from_str


def test_catalog_entries():
    ids = [c.id for c in base_catalog()]
    assert ids == ["(2,1)1", "(3,1)1", "(3,2)1", "(4,3)1", "(5,3)1", "(5,4)1"]
    assert base_code("(3,2)1").B.to_lists() == [[1], [1]]
    assert base_code("(5,3)1").B.to_lists() == [[1, 1]] * 3
    assert base_code("(2,1)1").B.to_lists() == [[1]]
    assert base_code("3,2") is not None and base_code("(3,2)").id == "(3,2)1"


@pytest.mark.parametrize("bad", ["(9,2)1", "", "banana", "(3,2)2"])
def test_malformed_base_id(bad):
    with pytest.raises(ParameterError):
        base_code(bad)


@pytest.mark.parametrize("n1,k1,n2,k2,base,v,nk", [
    (1, 14, 1, 1, "(2,1)1", 494, (1001, 507)),
    (1, 14, 1, 2, "(3,2)1", 330, (1002, 672)),
    (1, 14, 1, 4, "(5,4)1", 198, (1000, 802)),
])
def test_practical_dimensions(n1, k1, n2, k2, base, v, nk):
    code = build_code(StGenParams(k1, n1, k2, n2, base_code(base), v, seed=3))
    assert (code.n, code.k) == nk


def test_parameter_errors():
    with pytest.raises(ParameterError):
        StGenParams(14, 1, 2, 1, base_code("(2,1)1"), 3)
    with pytest.raises(ParameterError):
        StGenParams(14, 1, 1, 1, base_code("(2,1)1"), 0)
    with pytest.raises(ParameterError):
        practical_params(7, 1000)


def test_single_block_matrices(single_code):
    assert generator_matrix(single_code).to_lists() == [[1, 1]]
    assert parity_check_matrix(single_code).to_lists() == [[1, 1]]
    assert encode(single_code, V("1")) == V("11")


def test_toy_matrices(toy_code):
    G = generator_matrix(toy_code)
    H = parity_check_matrix(toy_code)
    assert G.to_lists() == [[1, 0, 1, 1], [0, 1, 0, 1]]
    assert H.to_lists() == [[1, 0, 1, 0], [1, 1, 0, 1]]
    assert (G @ H.transpose()).is_zero()
    assert g_prefix(toy_code, 1).to_lists() == [[1, 1]]
    assert g_prefix(toy_code, 2) == G
    with pytest.raises(IndexError):
        g_prefix(toy_code, 3)


def test_practical_nearest_lengths():
    got = {}
    for row, t in enumerate(PRACTICAL_ROWS, start=1):
        for nominal in (t.nominal_1000, t.nominal_1500):
            p = practical_params(row, nominal[0])
            got[nominal] = (p.n, p.k)
    assert got[(1001, 507)] == (1001, 507)
    assert got[(1500, 1004)] == (1500, 1004)
    assert got[(1000, 802)] == (1000, 802) and got[(1503, 1130)] == (1503, 1130)
    # unreachable nominal lengths resolve to the nearest reachable code
    assert got[(1000, 343)] == (1000, 342)
    assert got[(999, 603)] == (1001, 605)
    # equidistant lengths resolve to the shorter code
    assert practical_params(2, 1000).n == 999
    for row, t in enumerate(PRACTICAL_ROWS, start=1):
        p = practical_params(row, t.nominal_1000[0])
        assert p.base.id == t.base_id


def _random_small(rng):
    base = rng.choice(base_catalog())
    return StGenParams(rng.randint(1, 5), rng.randint(1, 3), base.k, base.n - base.k, base,
                       rng.randint(1, 4), rng.getrandbits(16))


@pytest.mark.parametrize("seed", range(15))
def test_structure_random_small(seed):
    rng = random.Random(seed)
    code = build_code(_random_small(rng))
    G = generator_matrix(code)
    H = parity_check_matrix(code)
    assert G.submatrix(0, code.k, 0, code.k) == BitMatrix.identity(code.k)
    assert (G @ H.transpose()).is_zero()
    for _ in range(5):
        x = BitVector.random(code.k, rng)
        cw = encode(code, x)
        assert cw == vec_mat_mul(x, G)
        assert syndrome(code, cw) == BitVector.zeros(code.r)
        y = BitVector.random(code.n, rng)
        assert syndrome(code, y) == vec_mat_mul(y, H.transpose())
    # staircase: parity block i is zero below row K_i
    P = G.submatrix(0, code.k, code.k, code.n)
    for i in range(code.v):
        rows_below = P.submatrix(code.K[i], code.k, code.N[i] - code.block_dims()[i][1], code.N[i])
        assert rows_below.is_zero()


@pytest.mark.parametrize("row", range(1, 7))
def test_practical_gh_zero(row):
    code = build_code(practical_params(row, 1000))
    G = generator_matrix(code)
    H = parity_check_matrix(code)
    assert (G @ H.transpose()).is_zero()


def test_build_deterministic():
    p = practical_params(2, 1001, seed=11)
    assert build_code(p) == build_code(p)
    assert build_code(p) != build_code(practical_params(2, 1001, seed=12))


def test_diagonal_blocks_from_base():
    code = build_code(practical_params(5, 1000))
    base = base_code("(4,3)1").B
    assert all(b == base for b in code.blocks_B[1:])


def test_descriptor_roundtrip(tmp_path):
    rng = random.Random(5)
    for _ in range(10):
        code = build_code(_random_small(rng))
        assert from_descriptor(json.loads(json.dumps(to_descriptor(code)))) == code
    code = build_code(practical_params(3, 1500))
    path = tmp_path / "c.json"
    save_code(code, path)
    assert load_code(path) == code


def test_descriptor_hex_layout():
    params = StGenParams(2, 5, 1, 1, base_code("(2,1)1"), 1)
    code = StGenCode(params, BitMatrix.from_rows(["10000", "01001"]), [])
    d = to_descriptor(code)
    # each 5-column row takes two hex digits, column 0 in the top bit
    assert d["B_1"] == "8048"


def test_descriptor_rejects_corruption():
    d = to_descriptor(build_code(practical_params(2, 1001)))
    for mutate in (lambda x: x.pop("B_1"), lambda x: x.update(n=5), lambda x: x.update(version=9),
                   lambda x: x.update(B_prime=x["B_prime"][:-1]), lambda x: x.update(B_1="zz")):
        bad = json.loads(json.dumps(d))
        mutate(bad)
        with pytest.raises(ParameterError):
            from_descriptor(bad)
