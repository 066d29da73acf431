"""List decoder for staircase-generator codes.

Given a target word ``c_0`` the decoder walks the staircase block by block,
keeping at most ``L_cap`` partial solutions ``(x_i, e_i)`` with
``x_i G_i = e_i + c_0|prefix`` and cumulative weight at most ``w_i``.  The
cap on the running weight rises by one after every step whose list came out
shorter than ``L_cap``.

Two implementations share the same pruning rule (lowest weight first, ties
to the lexicographically smallest message prefix) and therefore return
identical results: :func:`decode_close` runs the compiled kernel and
:func:`decode_reference` composes :func:`step_init` and :func:`step_extend`
in plain Python.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernel
from .codes import StGenCode, encode
from .gf2 import BitVector, DimensionError


class DecodeFailure(RuntimeError):
    """A step produced an empty list even after weight escalation."""


@dataclass(frozen=True)
class DecoderConfig:
    w_1: int = 2
    w_b: int = 2
    L_cap: int = 256
    retry_limit: int = 3

    def __post_init__(self):
        if self.w_1 < 0 or self.w_b < 1 or self.L_cap < 1 or self.retry_limit < 0:
            raise ValueError(f"invalid decoder config {self}")


@dataclass(frozen=True)
class ListEntry:
    """A partial solution after step i.

    ``e`` is laid out as the K_i identity coordinates followed by the N_i
    parity coordinates, matching the columns of ``G_i``.  ``feedback`` caches
    ``x_i P`` over all parity columns so later steps read their B'-term
    without re-multiplying.
    """
    x: BitVector
    e: BitVector
    weight: int
    feedback: int = field(repr=False, default=0)


@dataclass(frozen=True)
class DecodeResult:
    x: BitVector
    e: BitVector
    weight: int
    final_w: int
    list_trace: tuple[int, ...]


def weight_schedule_update(current_w: int, list_size: int, cfg: DecoderConfig) -> int:
    return current_w + 1 if list_size < cfg.L_cap else current_w


def _bitrev(j: int, width: int) -> int:
    return int(format(j, f"0{width}b")[::-1], 2) if width else 0


def _lex_key(x: BitVector) -> str:
    return x.to_str()


def _prune(cands: list[ListEntry], cap: int) -> list[ListEntry]:
    # cands arrive in lexicographic order of x; keep that order for survivors
    if len(cands) <= cap:
        return cands
    ranked = sorted(range(len(cands)), key=lambda s: (cands[s].weight, s))[:cap]
    return [cands[s] for s in sorted(ranked)]


def step_init(code: StGenCode, c0: BitVector, cfg: DecoderConfig, w: int | None = None) -> list[ListEntry]:
    """All first-block prefixes within weight ``w`` (default ``cfg.w_1``), pruned to the cap."""
    if c0.length != code.n:
        raise DimensionError(f"target length {c0.length}, code length {code.n}")
    w = cfg.w_1 if w is None else w
    k1, n1 = code.block_dims()[0]
    cid = c0.bits & ((1 << k1) - 1)
    cpar = (c0.bits >> code.k) & ((1 << n1) - 1)
    rows = code.parity_rows
    out = []
    for j in range(1 << k1):
        x = _bitrev(j, k1)
        e_id = x ^ cid
        if e_id.bit_count() > w:
            continue
        fb = 0
        for a in range(k1):
            if (x >> a) & 1:
                fb ^= rows[a]
        e_par = (fb ^ cpar) & ((1 << n1) - 1)
        wt = e_id.bit_count() + e_par.bit_count()
        if wt <= w:
            out.append(ListEntry(BitVector(x, k1), BitVector(e_id | (e_par << k1), k1 + n1), wt, fb))
    return _prune(out, cfg.L_cap)


def step_extend(code: StGenCode, i: int, entries: list[ListEntry], c0: BitVector,
                w_i: int, cfg: DecoderConfig) -> list[ListEntry]:
    """Extend every parent by block ``i`` (1-based, ``i >= 2``)."""
    if not 2 <= i <= code.v:
        raise IndexError(f"step index {i} outside 2..{code.v}")
    ki, ni = code.block_dims()[i - 1]
    k_prev, n_prev = code.K[i - 2], code.N[i - 2]
    Ki, Ni = code.K[i - 1], code.N[i - 1]
    cid = (c0.bits >> k_prev) & ((1 << ki) - 1)
    cpar = (c0.bits >> (code.k + n_prev)) & ((1 << ni) - 1)
    rows = code.parity_rows
    mask_n = (1 << ni) - 1

    new_rows = []
    for xn in range(1 << ki):
        fb = 0
        for a in range(ki):
            if (xn >> a) & 1:
                fb ^= rows[k_prev + a]
        new_rows.append(fb)
    order = [_bitrev(j, ki) for j in range(1 << ki)]

    out = []
    for parent in sorted(entries, key=lambda en: _lex_key(en.x)):
        # residual target: new identity bits, new parity bits plus x_{i-1} B'_i
        t = ((parent.feedback >> n_prev) & mask_n) ^ cpar
        pe_id = parent.e.bits & ((1 << k_prev) - 1)
        pe_par = parent.e.bits >> k_prev
        for xn in order:
            fb = parent.feedback ^ new_rows[xn]
            e_new_id = xn ^ cid
            e_new_par = ((new_rows[xn] >> n_prev) & mask_n) ^ t
            dw = e_new_id.bit_count() + e_new_par.bit_count()
            if dw > cfg.w_b or parent.weight + dw > w_i:
                continue
            x = BitVector(parent.x.bits | (xn << k_prev), Ki)
            e_id = pe_id | (e_new_id << k_prev)
            e_par = pe_par | (e_new_par << n_prev)
            out.append(ListEntry(x, BitVector(e_id | (e_par << Ki), Ki + Ni), parent.weight + dw, fb))
    return _prune(out, cfg.L_cap)


def _finish(code: StGenCode, c0: BitVector, x: BitVector, weight: int, final_w: int,
            trace: tuple[int, ...]) -> DecodeResult:
    e = encode(code, x) ^ c0
    if e.weight() != weight:
        raise AssertionError(f"decoder bookkeeping drifted: weight {weight} vs wt(e)={e.weight()}")
    return DecodeResult(x, e, weight, final_w, trace)


def decode_reference(code: StGenCode, c0: BitVector, cfg: DecoderConfig = DecoderConfig()) -> DecodeResult:
    """Pure-Python decoder; slow, used to cross-check :func:`decode_close`."""
    w = cfg.w_1
    entries = []
    for attempt in range(cfg.retry_limit + 1):
        entries = step_init(code, c0, cfg, w)
        if entries or attempt == cfg.retry_limit:
            break
        w += 1
    if not entries:
        raise DecodeFailure(f"empty first list at w={w}")
    trace = [len(entries)]
    for i in range(2, code.v + 1):
        w = weight_schedule_update(w, len(entries), cfg)
        nxt = []
        for attempt in range(cfg.retry_limit + 1):
            nxt = step_extend(code, i, entries, c0, w, cfg)
            if nxt or attempt == cfg.retry_limit:
                break
            w += 1
        if not nxt:
            raise DecodeFailure(f"empty list at step {i}, w={w}")
        entries = nxt
        trace.append(len(entries))
    best = min(entries, key=lambda en: (en.weight, _lex_key(en.x)))
    # the full-length x carries the full message; the e layout already matches G
    return _finish(code, c0, best.x, best.weight, w, tuple(trace))


def _kernel_inputs(code: StGenCode):
    cached = getattr(code, "_kernel_inputs", None)
    if cached is None:
        dims = code.block_dims()
        cached = (code.packed_rows,
                  np.array([d[0] for d in dims], np.int64),
                  np.array([d[1] for d in dims], np.int64))
        code._kernel_inputs = cached
    return cached


def _to_bit_array(value: int, length: int) -> np.ndarray:
    raw = np.frombuffer(value.to_bytes((length + 7) // 8 or 1, "little"), np.uint8)
    return np.unpackbits(raw, bitorder="little")[:length].copy()


def _from_bit_array(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def decode_close(code: StGenCode, c0: BitVector, cfg: DecoderConfig = DecoderConfig()) -> DecodeResult:
    """Find ``x`` and a low-weight ``e`` with ``x G = e + c_0``."""
    if c0.length != code.n:
        raise DimensionError(f"target length {c0.length}, code length {code.n}")
    P, blk_k, blk_n = _kernel_inputs(code)
    cid = _to_bit_array(c0.bits & ((1 << code.k) - 1), code.k)
    cpar = _to_bit_array(c0.bits >> code.k, code.r)
    x_out = np.zeros(code.k, np.uint8)
    trace = np.zeros(code.v, np.int64)
    status, weight, final_w = _kernel.decode_kernel(
        P, cid, cpar, blk_k, blk_n, cfg.w_1, cfg.w_b, cfg.L_cap, cfg.retry_limit, x_out, trace)
    if status != _kernel.OK:
        raise DecodeFailure(f"empty list after {cfg.retry_limit} escalations (w={final_w})")
    x = BitVector(_from_bit_array(x_out), code.k)
    return _finish(code, c0, x, int(weight), int(final_w), tuple(int(t) for t in trace))
