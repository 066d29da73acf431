from __future__ import annotations

import math
import random

import pytest

from stgen.analysis import (binary_entropy, distortion_profile, efficiency_bound, entropy_inverse,
                            list_dynamics_report)
from stgen.codes import StGenParams, base_catalog, base_code, build_code, practical_params
from stgen.decoder import DecoderConfig
from stgen.codes import encode, generator_matrix
from stgen.decoder import decode_close
from stgen.gf2 import BitVector
from stgen.oracle import average_distance


def _bisect_inverse(alpha: float) -> float:
    # independent oracle: plain bisection on the increasing branch of H
    lo, hi = 0.0, 0.5
    for _ in range(200):
        mid = (lo + hi) / 2
        h = 0.0 if mid == 0 else -mid * math.log2(mid) - (1 - mid) * math.log2(1 - mid)
        lo, hi = (mid, hi) if h < alpha else (lo, mid)
    return (lo + hi) / 2


def test_entropy_values():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(0.11) == pytest.approx(0.49992, abs=1e-5)
    with pytest.raises(ValueError):
        binary_entropy(1.5)


def test_entropy_inverse():
    assert entropy_inverse(1.0) == 0.5
    assert entropy_inverse(0.5) == pytest.approx(0.110025, abs=5e-6)
    # frozen from the bisection oracle below
    assert entropy_inverse(0.5) == pytest.approx(0.11002786443835955, abs=1e-12)
    for a in [i / 10 for i in range(1, 10)]:
        p = entropy_inverse(a)
        assert 0 < p <= 0.5
        assert binary_entropy(p) == pytest.approx(a, abs=1e-10)
        assert p == pytest.approx(_bisect_inverse(a), abs=1e-12)
    with pytest.raises(ValueError):
        entropy_inverse(0.0)


def test_efficiency_bound():
    assert efficiency_bound(1.0) == 2.0
    assert efficiency_bound(0.5) == pytest.approx(0.5 / _bisect_inverse(0.5), rel=1e-12)
    assert efficiency_bound(0.5) == pytest.approx(4.5444, abs=1e-3)
    grid = [i / 100 for i in range(1, 101)]
    vals = [efficiency_bound(a) for a in grid]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_first_block_row():
    params = StGenParams(14, 2, 1, 2, base_code("(3,1)1"), 1)
    prof = distortion_profile(params, DecoderConfig(w_1=2))
    assert prof.V[0] == pytest.approx((0.25, 4.0, 30.0))


def test_halving_with_single_parity_bit_blocks():
    params = StGenParams(14, 1, 1, 1, base_code("(2,1)1"), 8)
    prof = distortion_profile(params, DecoderConfig())
    for i in range(8):
        assert prof.V[i][0] == pytest.approx(prof.V[0][0] / 2 ** i, rel=1e-15)


@pytest.mark.parametrize("row", range(1, 7))
def test_profile_shape(row):
    cfg = DecoderConfig()
    prof = distortion_profile(practical_params(row, 1000), cfg)
    for i, row_v in enumerate(prof.V):
        assert len(row_v) == prof.w_schedule[i] + 1
        assert all(x >= 0 for x in row_v)
    assert prof.R_alg is not None


def test_r_alg_none_when_unreachable():
    params = StGenParams(1, 8, 1, 1, base_code("(2,1)1"), 1)
    assert distortion_profile(params, DecoderConfig(w_1=0)).R_alg is None


def test_zero_coefficient_rows():
    # one-bit blocks: (2 - 1 - 1 - 1) / C(2, 2) = -1, so each increment grows the list
    rep = list_dynamics_report(practical_params(2, 1001), DecoderConfig())
    assert rep.growth_coefficient == -1
    assert not rep.growth_failures


def test_one_step_recurrence_random_small():
    rng = random.Random(3)
    for _ in range(10):
        base = rng.choice(base_catalog())
        params = StGenParams(rng.randint(2, 14), rng.randint(1, 3), base.k, base.n - base.k, base,
                             rng.randint(2, 60))
        rep = list_dynamics_report(params, DecoderConfig(L_cap=rng.choice([4, 16, 256])))
        assert rep.recurrence_max_rel_error <= 1e-12


def test_dynamics_requires_wb_two():
    with pytest.raises(ValueError):
        list_dynamics_report(practical_params(2, 1001), DecoderConfig(w_b=1))


def _random_small_params(rng, seed, k_max, n_max):
    base = rng.choice(base_catalog())
    k1 = rng.randint(3, min(10, k_max - base.k))
    n1 = rng.randint(1, 2)
    v_max = max(1, min((k_max - k1) // base.k, (n_max - k1 - n1) // base.n) + 1)
    return StGenParams(k1, n1, base.k, base.n - base.k, base, rng.randint(1, v_max), seed)


@pytest.mark.parametrize("seed", range(8))
def test_average_distance_within_estimate(seed):
    # the estimate pins down only the integer part of the algorithm's distortion
    params = _random_small_params(random.Random(seed), seed, 14, 22)
    prof = distortion_profile(params, DecoderConfig())
    r_a = average_distance(generator_matrix(build_code(params)))
    assert prof.R_alg is not None
    assert r_a <= prof.R_alg + 1


@pytest.mark.parametrize("seed", range(4))
def test_average_distance_below_decoder_average(seed):
    params = _random_small_params(random.Random(100 + seed), seed, 8, 12)
    code = build_code(params)
    total = 0
    for word in range(1 << code.n):
        c0 = BitVector(word, code.n)
        res = decode_close(code, c0)
        assert encode(code, res.x) ^ res.e == c0
        total += res.weight
    assert average_distance(generator_matrix(code)) <= total / (1 << code.n)
