"""Exhaustive ground truth for small codes.

Nothing here samples or approximates: inputs beyond the budget are refused.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gf2 import BitMatrix, BitVector, DimensionError


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_k: int = 20
    max_n: int = 24


DEFAULT_BUDGET = OracleBudget()


def _lex_key(x: int, k: int) -> str:
    return format(x, f"0{k}b")[::-1] if k else ""


def nearest_codeword(G: BitMatrix, c0: BitVector, budget: OracleBudget = DEFAULT_BUDGET) -> tuple[BitVector, int]:
    """Closest codeword to ``c0`` by scanning all 2^k messages in Gray-code order.

    Ties go to the lexicographically smallest message (coordinate 0 first).
    """
    k, n = G.shape
    if k > budget.max_k:
        raise BudgetExceeded(f"k={k} exceeds oracle budget {budget.max_k}")
    if c0.length != n:
        raise DimensionError(f"word length {c0.length}, code length {n}")
    rows = G.row_bits
    best_d = c0.weight()
    best = [0]
    x = 0
    cw = 0
    for step in range(1, 1 << k):
        bit = (step & -step).bit_length() - 1
        x ^= 1 << bit
        cw ^= rows[bit]
        d = (cw ^ c0.bits).bit_count()
        if d < best_d:
            best_d = d
            best = [x]
        elif d == best_d:
            best.append(x)
    x_best = min(best, key=lambda v: _lex_key(v, k))
    return BitVector(x_best, k), best_d


def _coset_min_weights(G: BitMatrix, budget: OracleBudget) -> tuple[np.ndarray, int, int]:
    """Minimum weight in each coset, by scanning every word of F_2^n."""
    k, n = G.shape
    if n > budget.max_n:
        raise BudgetExceeded(f"n={n} exceeds oracle budget {budget.max_n}")
    if k > budget.max_k:
        raise BudgetExceeded(f"k={k} exceeds oracle budget {budget.max_k}")
    H_cols, r = _parity_check_columns(G)
    synd = np.zeros(1, dtype=np.uint32)
    wts = np.zeros(1, dtype=np.uint8)
    for j in range(n):
        synd = np.concatenate([synd, synd ^ np.uint32(H_cols[j])])
        wts = np.concatenate([wts, wts + np.uint8(1)])
    best = np.full(1 << r, n + 1, dtype=np.uint8)
    np.minimum.at(best, synd, wts)
    return best, n, r


def _rref(G: BitMatrix) -> tuple[list[int], list[int]]:
    rows = list(G.row_bits)
    pivots: list[int] = []
    for col in range(G.cols):
        rank = len(pivots)
        piv = next((i for i in range(rank, len(rows)) if (rows[i] >> col) & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and (rows[i] >> col) & 1:
                rows[i] ^= rows[rank]
        pivots.append(col)
    return rows[:len(pivots)], pivots


def _parity_check_columns(G: BitMatrix) -> tuple[list[int], int]:
    """Syndrome contribution of each coordinate, and the syndrome width.

    In reduced row echelon form every free coordinate c satisfies
    x_c = sum_i R[i][c] x_{pivot_i}; each such relation is one check bit.
    """
    rows, pivots = _rref(G)
    free = [c for c in range(G.cols) if c not in set(pivots)]
    cols = [0] * G.cols
    for s, c in enumerate(free):
        cols[c] = 1 << s
    for i, p in enumerate(pivots):
        cols[p] = sum(1 << s for s, c in enumerate(free) if (rows[i] >> c) & 1)
    return cols, len(free)


def covering_radius(G: BitMatrix, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    best, _, _ = _coset_min_weights(G, budget)
    return int(best.max())


def average_distance_exact(G: BitMatrix, budget: OracleBudget = DEFAULT_BUDGET) -> Fraction:
    best, _, r = _coset_min_weights(G, budget)
    # every coset has the same size, so the word average is the coset average
    return Fraction(int(best.sum()), 1 << r)


def average_distance(G: BitMatrix, budget: OracleBudget = DEFAULT_BUDGET) -> float:
    return float(average_distance_exact(G, budget))
