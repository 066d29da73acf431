"""Expected list sizes and distortion of the staircase list decoder.

``V[i][j]`` is the expected number of partial error vectors of weight ``j``
surviving step ``i`` (0-based here).  The first block contributes
``C(k_1+n_1, j) / 2^{n_1}``; each later block convolves the previous row with
``C(k_i+n_i, l) / 2^{n_i}`` for ``l <= w_b`` and truncates at the running
weight cap.  The cap follows the decoder's rule, driven by expected list size.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.optimize import brentq

from .codes import StGenParams
from .decoder import DecoderConfig

SMALL_BALL_BITS = 40


def binary_entropy(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def entropy_inverse(alpha: float) -> float:
    """The p in (0, 1/2] with H(p) = alpha."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    if alpha == 1.0:
        return 0.5
    return brentq(lambda p: binary_entropy(p) - alpha, 1e-300, 0.5, xtol=1e-15, maxiter=500)


def efficiency_bound(alpha: float) -> float:
    """Upper bound alpha / H^-1(alpha) on embedding efficiency at rate alpha."""
    return alpha / entropy_inverse(alpha)


@dataclass(frozen=True)
class BoundPoint:
    alpha: float
    e_bound: float

    @classmethod
    def at(cls, alpha: float) -> BoundPoint:
        return cls(alpha, efficiency_bound(alpha))


@dataclass(frozen=True)
class DistortionProfile:
    V: tuple[tuple[float, ...], ...]
    expected_list_sizes: tuple[float, ...]
    w_schedule: tuple[int, ...]
    R_alg: int | None
    block_dims: tuple[tuple[int, int], ...] = field(repr=False)

    def ball(self, i: int, j: int) -> float:
        """Expected size of the weight-``j`` ball after step ``i`` (0-based)."""
        if j < 0:
            return 0.0
        return math.fsum(self.V[i][: j + 1])


def distortion_profile(params: StGenParams, cfg: DecoderConfig) -> DistortionProfile:
    dims = params.block_dims()
    k1, n1 = dims[0]
    w = cfg.w_1
    row = [math.comb(k1 + n1, j) / 2 ** n1 for j in range(w + 1)]
    V = [tuple(row)]
    sizes = [math.fsum(row)]
    ws = [w]
    for ki, ni in dims[1:]:
        if sizes[-1] < cfg.L_cap:
            w += 1
        coef = [math.comb(ki + ni, l) / 2 ** ni for l in range(cfg.w_b + 1)]
        prev = V[-1]
        row = []
        for j in range(w + 1):
            terms = [coef[l] * prev[j - l] for l in range(min(j, cfg.w_b) + 1) if j - l < len(prev)]
            row.append(math.fsum(terms))
        V.append(tuple(row))
        sizes.append(math.fsum(row))
        ws.append(w)
    last = V[-1]
    R_alg = next((j for j, val in enumerate(last) if val >= 1.0), None)
    return DistortionProfile(tuple(V), tuple(sizes), tuple(ws), R_alg, tuple(dims))


# -- list growth and decay -----------------------------------------------------

@dataclass
class ListDynamicsReport:
    recurrence_max_rel_error: float
    recurrence_checks: int
    shrink_checks: int
    shrink_mismatches: list[tuple[int, int]]
    decay_steps: list[int]
    decay_unresolved: int
    growth_coefficient: float
    growth_increments: int
    growth_failures: list[int]
    growth_condition_mismatches: list[int]

    @property
    def max_decay_steps(self) -> int:
        return max(self.decay_steps, default=0)

    def passed(self, recurrence_tol: float = 1e-12, max_s: int = 5) -> bool:
        return (self.recurrence_max_rel_error <= recurrence_tol
                and not self.shrink_mismatches
                and self.max_decay_steps <= max_s
                and self.growth_coefficient < 0
                and not self.growth_failures
                and not self.growth_condition_mismatches)


def _rel_err(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def list_dynamics_report(params: StGenParams, cfg: DecoderConfig) -> ListDynamicsReport:
    """Check the closed-form list recurrences and the growth/decay conditions.

    Balls below ``2**-40`` are treated as empty when predicting which ball
    sizes shrink; the observed sizes always come from the full table.
    """
    if cfg.w_b != 2:
        raise ValueError("list dynamics checks assume w_b = 2")
    prof = distortion_profile(params, cfg)
    ws = prof.w_schedule
    size = prof.expected_list_sizes
    cut = 2.0 ** -SMALL_BALL_BITS
    k2, n2 = params.k_2, params.n_2
    m = k2 + n2
    c2 = math.comb(m, 2)
    q = 2 ** n2

    recurrence_err = 0.0
    recurrence_checks = 0
    shrink_checks = 0
    shrink_bad: list[tuple[int, int]] = []
    growth_incr = 0
    growth_fail: list[int] = []
    growth_iff: list[int] = []
    growth_coef = (q - m - 1) / c2 if c2 else math.inf

    for i in range(len(prof.V) - 1):
        w = ws[i]
        B = prof.ball
        if ws[i + 1] == w:
            predicted = size[i] / q + m / q * B(i, w - 1) + c2 / q * B(i, w - 2)
        else:
            predicted = (m + 1) / q * size[i] + c2 / q * B(i, w - 1)
        recurrence_err = max(recurrence_err, _rel_err(predicted, size[i + 1]))
        recurrence_checks += 1

        if ws[i + 1] == w:
            def cb(j: int) -> float:
                val = B(i, j)
                return val if val > cut else 0.0

            j0 = next((j for j in range(w + 1) if cb(j) > 0), None)
            if j0 is None:
                continue
            for j in range(j0, w + 1):
                shrinks = B(i, j) > B(i + 1, j)
                if j == j0:
                    pred = True
                elif j == j0 + 1:
                    pred = m / (q - 1) * cb(j0) < cb(j)
                else:
                    pred = (m * cb(j - 1) + c2 * cb(j - 2)) / (q - 1) < cb(j)
                shrink_checks += 1
                if pred != shrinks:
                    shrink_bad.append((i, j))
        else:
            growth_incr += 1
            grew = size[i + 1] > size[i]
            if not grew:
                growth_fail.append(i)
            if grew != (B(i, w - 1) > growth_coef * size[i]):
                growth_iff.append(i)

    # runs of constant weight: steps until the expected list first shrinks
    s_values: list[int] = []
    unresolved = 0
    last = len(prof.V) - 1
    for i in range(last):
        starts_run = ws[i + 1] == ws[i] and (i == 0 or ws[i] != ws[i - 1])
        if not starts_run:
            continue
        s = 0
        while True:
            j = i + s
            if j + 1 > last or ws[j + 1] != ws[i]:
                unresolved += 1
                break
            if size[j + 1] < size[j]:
                s_values.append(s)
                break
            s += 1

    return ListDynamicsReport(recurrence_err, recurrence_checks, shrink_checks, shrink_bad, s_values, unresolved,
                              growth_coef, growth_incr, growth_fail, growth_iff)
