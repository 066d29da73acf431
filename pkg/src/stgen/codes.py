"""Staircase-generator codes.

The generator is ``G = [I_k | P]`` where the parity part ``P`` is block upper
triangular: column group ``i`` holds a random block ``B'_i`` over the first
``K_{i-1}`` rows, the diagonal block ``B_i`` over rows ``K_{i-1}..K_i`` and
zeros below.  Codes are stored as their block lists; dense matrices are
exported on demand.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .gf2 import BitMatrix, BitVector, DimensionError

DESCRIPTOR_VERSION = 1


class ParameterError(ValueError):
    """Inconsistent code parameters or malformed descriptor."""


@dataclass(frozen=True)
class BaseCode:
    n: int
    k: int
    R: int
    B: BitMatrix

    def __post_init__(self):
        if self.B.shape != (self.k, self.n - self.k):
            raise ParameterError(f"B has shape {self.B.shape}, expected {(self.k, self.n - self.k)}")

    @property
    def id(self) -> str:
        return f"({self.n},{self.k}){self.R}"

    def generator(self) -> BitMatrix:
        return BitMatrix.identity(self.k).hstack(self.B)


def base_catalog() -> tuple[BaseCode, ...]:
    """The six small covering-radius-1 codes used for diagonal blocks."""
    return (
        BaseCode(2, 1, 1, BitMatrix.from_rows(["1"])),
        BaseCode(3, 1, 1, BitMatrix.from_rows(["11"])),
        BaseCode(3, 2, 1, BitMatrix.from_rows(["1", "1"])),
        BaseCode(4, 3, 1, BitMatrix.from_rows(["1", "1", "1"])),
        BaseCode(5, 3, 1, BitMatrix.from_rows(["11", "11", "11"])),
        BaseCode(5, 4, 1, BitMatrix.from_rows(["1", "1", "1", "1"])),
    )


def base_code(code_id: str) -> BaseCode:
    """Look up a catalog code by id, e.g. ``"(3,2)1"`` or ``"3,2"``."""
    key = code_id.replace(" ", "")
    for c in base_catalog():
        if key in (c.id, f"({c.n},{c.k})", f"{c.n},{c.k}"):
            return c
    raise ParameterError(f"unknown base code {code_id!r}; known: {[c.id for c in base_catalog()]}")


@dataclass(frozen=True)
class StGenParams:
    k_1: int
    n_1: int
    k_2: int
    n_2: int
    base: BaseCode
    v: int
    seed: int = 0

    def __post_init__(self):
        if self.v < 1:
            raise ParameterError("v must be >= 1")
        if min(self.k_1, self.n_1, self.k_2, self.n_2) < 1:
            raise ParameterError("block dimensions must be >= 1")
        if self.base.k != self.k_2 or self.base.n - self.base.k != self.n_2:
            raise ParameterError(
                f"base code {self.base.id} does not fit k_2={self.k_2}, n_2={self.n_2}")

    @property
    def k(self) -> int:
        return self.k_1 + (self.v - 1) * self.k_2

    @property
    def n(self) -> int:
        return self.k + self.n_1 + (self.v - 1) * self.n_2

    def block_dims(self) -> list[tuple[int, int]]:
        """(k_i, n_i) for every block."""
        return [(self.k_1, self.n_1)] + [(self.k_2, self.n_2)] * (self.v - 1)


class StGenCode:
    """An immutable staircase-generator code built from explicit blocks."""

    def __init__(self, params: StGenParams, B1: BitMatrix, Bprime: list[BitMatrix] | tuple[BitMatrix, ...]):
        if B1.shape != (params.k_1, params.n_1):
            raise ParameterError(f"B_1 has shape {B1.shape}, expected {(params.k_1, params.n_1)}")
        if len(Bprime) != params.v - 1:
            raise ParameterError(f"expected {params.v - 1} B' blocks, got {len(Bprime)}")
        dims = params.block_dims()
        K, N = [], []
        kk = nn = 0
        for ki, ni in dims:
            kk += ki
            nn += ni
            K.append(kk)
            N.append(nn)
        for i, bp in enumerate(Bprime, start=2):
            want = (K[i - 2], dims[i - 1][1])
            if bp.shape != want:
                raise ParameterError(f"B'_{i} has shape {bp.shape}, expected {want}")
        self.params = params
        self.blocks_B = (B1,) + (params.base.B,) * (params.v - 1)
        self.blocks_Bprime = tuple(Bprime)
        self.K = tuple(K)
        self.N = tuple(N)

    @property
    def k(self) -> int:
        return self.K[-1]

    @property
    def r(self) -> int:
        """Number of parity columns, n - k."""
        return self.N[-1]

    @property
    def n(self) -> int:
        return self.k + self.r

    @property
    def v(self) -> int:
        return self.params.v

    def block_dims(self) -> list[tuple[int, int]]:
        return self.params.block_dims()

    def __eq__(self, other):
        if not isinstance(other, StGenCode):
            return NotImplemented
        return (self.params == other.params and self.blocks_B == other.blocks_B
                and self.blocks_Bprime == other.blocks_Bprime)

    def __hash__(self):
        return hash((self.params, self.blocks_B[0], self.blocks_Bprime))

    def __repr__(self):
        p = self.params
        return (f"StGenCode(n={self.n}, k={self.k}, k_1={p.k_1}, n_1={p.n_1}, "
                f"base={p.base.id}, v={p.v}, seed={p.seed})")

    @cached_property
    def parity_columns(self) -> tuple[int, ...]:
        """Column ``c`` of ``P`` as an integer over the k message coordinates."""
        cols: list[int] = []
        for b, (ki, ni) in enumerate(self.block_dims()):
            k_prev = self.K[b] - ki
            diag = self.blocks_B[b].transpose().row_bits
            above = self.blocks_Bprime[b - 1].transpose().row_bits if b else (0,) * ni
            for j in range(ni):
                cols.append(above[j] | (diag[j] << k_prev))
        return tuple(cols)

    @cached_property
    def parity_rows(self) -> tuple[int, ...]:
        """Row ``a`` of ``P`` as an integer over the n - k parity coordinates."""
        return BitMatrix(self.parity_columns, self.k).transpose().row_bits

    @cached_property
    def packed_rows(self) -> np.ndarray:
        """``P`` packed row-wise into little-endian uint64 words, shape (k, W)."""
        words = max(1, (self.r + 63) // 64)
        buf = b"".join(row.to_bytes(8 * words, "little") for row in self.parity_rows)
        out = np.frombuffer(buf, dtype="<u8").reshape(self.k, words)
        return np.ascontiguousarray(out, dtype=np.uint64)

    def parity_of(self, x_bits: int) -> int:
        """``x * P`` for a message given as an integer over k bits."""
        out = 0
        rows = self.parity_rows
        while x_bits:
            low = x_bits & -x_bits
            out ^= rows[low.bit_length() - 1]
            x_bits ^= low
        return out


def build_code(params: StGenParams) -> StGenCode:
    """Build the code, drawing ``B_1`` and every ``B'_i`` from a seeded stream.

    ``B_1`` is drawn first, then ``B'_2, ..., B'_v`` row by row.  Only the
    base code is fixed; the descriptor records every random block so that
    readers never need to replay the generator.
    """
    rng = random.Random(params.seed)
    dims = params.block_dims()
    B1 = BitMatrix.random(params.k_1, params.n_1, rng)
    Bprime = []
    k_prev = params.k_1
    for ki, ni in dims[1:]:
        Bprime.append(BitMatrix.random(k_prev, ni, rng))
        k_prev += ki
    return StGenCode(params, B1, Bprime)


def generator_matrix(code: StGenCode) -> BitMatrix:
    P = BitMatrix(code.parity_rows, code.r)
    return BitMatrix.identity(code.k).hstack(P)


def parity_check_matrix(code: StGenCode) -> BitMatrix:
    """``H = [P^T | I_{n-k}]``."""
    Pt = BitMatrix(code.parity_columns, code.k)
    return Pt.hstack(BitMatrix.identity(code.r))


def encode(code: StGenCode, x: BitVector) -> BitVector:
    if x.length != code.k:
        raise DimensionError(f"message length {x.length}, code dimension {code.k}")
    return BitVector(x.bits | (code.parity_of(x.bits) << code.k), code.n)


def syndrome(code: StGenCode, y: BitVector) -> BitVector:
    """``y H^T`` computed from the block columns."""
    if y.length != code.n:
        raise DimensionError(f"word length {y.length}, code length {code.n}")
    ident = y.bits & ((1 << code.k) - 1)
    return BitVector(code.parity_of(ident) ^ (y.bits >> code.k), code.r)


def g_prefix(code: StGenCode, i: int) -> BitMatrix:
    """``G_i = [I_{K_i} | P[:K_i, :N_i]]`` for 1-based block index ``i``."""
    if not 1 <= i <= code.v:
        raise IndexError(f"block index {i} outside 1..{code.v}")
    Ki, Ni = code.K[i - 1], code.N[i - 1]
    P = BitMatrix(code.parity_rows, code.r).submatrix(0, Ki, 0, Ni)
    return BitMatrix.identity(Ki).hstack(P)


# -- descriptor files ---------------------------------------------------------

def _matrix_to_hex(m: BitMatrix) -> str:
    """Rows concatenated; each row is ceil(cols/4) hex digits, column 0 as MSB."""
    width = (m.cols + 3) // 4
    if width == 0:
        return ""
    parts = []
    for i in range(m.rows):
        s = m.row(i).to_str().ljust(4 * width, "0")
        parts.append(format(int(s, 2), f"0{width}x"))
    return "".join(parts)


def _matrix_from_hex(text: str, rows: int, cols: int) -> BitMatrix:
    width = (cols + 3) // 4
    if len(text) != rows * width:
        raise ParameterError(f"hex block has {len(text)} digits, expected {rows * width}")
    out = []
    for i in range(rows):
        chunk = text[i * width:(i + 1) * width]
        try:
            s = format(int(chunk, 16), f"0{4 * width}b") if width else ""
        except ValueError as exc:
            raise ParameterError(f"bad hex digits {chunk!r}") from exc
        if "1" in s[cols:]:
            raise ParameterError("padding bits set in hex row")
        out.append(BitVector.from_str(s[:cols]).bits if cols else 0)
    return BitMatrix(tuple(out), cols)


def to_descriptor(code: StGenCode) -> dict:
    p = code.params
    return {
        "version": DESCRIPTOR_VERSION,
        "k_1": p.k_1,
        "n_1": p.n_1,
        "k_2": p.k_2,
        "n_2": p.n_2,
        "v": p.v,
        "base": p.base.id,
        "seed": p.seed,
        "n": code.n,
        "k": code.k,
        "B_1": _matrix_to_hex(code.blocks_B[0]),
        "B_prime": [_matrix_to_hex(bp) for bp in code.blocks_Bprime],
    }


def from_descriptor(d: dict) -> StGenCode:
    try:
        if d["version"] != DESCRIPTOR_VERSION:
            raise ParameterError(f"unsupported descriptor version {d['version']!r}")
        params = StGenParams(int(d["k_1"]), int(d["n_1"]), int(d["k_2"]), int(d["n_2"]),
                             base_code(d["base"]), int(d["v"]), int(d["seed"]))
        B1 = _matrix_from_hex(d["B_1"], params.k_1, params.n_1)
        dims = params.block_dims()
        if len(d["B_prime"]) != params.v - 1:
            raise ParameterError(f"expected {params.v - 1} B' blocks, got {len(d['B_prime'])}")
        Bprime = []
        k_prev = params.k_1
        for (ki, ni), text in zip(dims[1:], d["B_prime"]):
            Bprime.append(_matrix_from_hex(text, k_prev, ni))
            k_prev += ki
    except KeyError as exc:
        raise ParameterError(f"descriptor missing field {exc}") from exc
    code = StGenCode(params, B1, Bprime)
    for key, value in (("n", code.n), ("k", code.k)):
        if key in d and int(d[key]) != value:
            raise ParameterError(f"descriptor says {key}={d[key]} but blocks give {value}")
    return code


def save_code(code: StGenCode, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_descriptor(code), indent=1) + "\n")


def load_code(path: str | Path) -> StGenCode:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParameterError(f"{path}: not a JSON descriptor ({exc})") from exc
    return from_descriptor(data)


# -- practical parameter sets -------------------------------------------------

@dataclass(frozen=True)
class PracticalRow:
    n_1: int
    k_1: int
    n_2: int
    k_2: int
    base_id: str
    nominal_1000: tuple[int, int]
    nominal_1500: tuple[int, int]


PRACTICAL_ROWS = (
    PracticalRow(2, 14, 2, 1, "(3,1)1", (1000, 343), (1501, 509)),
    PracticalRow(1, 14, 1, 1, "(2,1)1", (1001, 507), (1501, 757)),
    PracticalRow(2, 14, 2, 3, "(5,3)1", (999, 603), (1499, 903)),
    PracticalRow(1, 14, 1, 2, "(3,2)1", (1002, 672), (1500, 1004)),
    PracticalRow(1, 14, 1, 3, "(4,3)1", (1003, 755), (1503, 1130)),
    PracticalRow(1, 14, 1, 4, "(5,4)1", (1000, 802), (1500, 1202)),
)


def practical_params(row: int, target_n: int, seed: int = 0) -> StGenParams:
    """Parameters for a 1-based practical-parameter row with length closest to ``target_n``.

    Ties between two reachable lengths go to the shorter code.
    """
    if not 1 <= row <= len(PRACTICAL_ROWS):
        raise ParameterError(f"row must be in 1..{len(PRACTICAL_ROWS)}, got {row}")
    t = PRACTICAL_ROWS[row - 1]
    step = t.k_2 + t.n_2
    first = t.k_1 + t.n_1
    if target_n < first:
        raise ParameterError(f"target length {target_n} below first block length {first}")
    lo = (target_n - first) // step
    v = min((lo, lo + 1), key=lambda m: (abs(first + m * step - target_n), m)) + 1
    return StGenParams(t.k_1, t.n_1, t.k_2, t.n_2, base_code(t.base_id), v, seed)
