"""Dense GF(2) vectors and matrices backed by Python integers.

Bit ``i`` of the backing integer is coordinate ``i`` of the vector, so the
string ``"1100"`` has coordinates 0 and 1 set.  Matrices store one integer per
row.  Both types are immutable.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Operand shapes do not agree."""


def _iter_set_bits(value: int):
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


@dataclass(frozen=True, slots=True)
class BitVector:
    bits: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise DimensionError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise DimensionError(f"bits set beyond length {self.length}")

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(0, length)

    @classmethod
    def ones(cls, length: int) -> BitVector:
        return cls((1 << length) - 1, length)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVector:
        value = 0
        n = 0
        for n, b in enumerate(bits, start=1):
            if b not in (0, 1):
                raise ValueError(f"not a bit: {b!r}")
            value |= b << (n - 1)
        return cls(value, n)

    @classmethod
    def from_str(cls, s: str) -> BitVector:
        """Parse ``"0110"``; the leftmost character is coordinate 0."""
        s = s.replace(" ", "")
        if set(s) - {"0", "1"}:
            raise ValueError(f"bit string must contain only 0/1: {s!r}")
        return cls.from_bits(int(ch) for ch in s)

    @classmethod
    def random(cls, length: int, rng: random.Random) -> BitVector:
        return cls(rng.getrandbits(length) if length else 0, length)

    @classmethod
    def from_bytes(cls, data: bytes, length: int | None = None) -> BitVector:
        """Unpack bytes MSB-first: bit 7 of ``data[0]`` becomes coordinate 0."""
        total = 8 * len(data)
        if length is None:
            length = total
        if length > total:
            raise DimensionError(f"{length} bits requested from {len(data)} bytes")
        big = int.from_bytes(data, "big")
        # reverse the bit order so the first byte's MSB lands on coordinate 0
        rev = int(format(big, f"0{total}b")[::-1], 2) if total else 0
        return cls(rev & ((1 << length) - 1), length)

    def to_bytes(self) -> bytes:
        """Pack MSB-first, zero-padding the final byte."""
        nbytes = (self.length + 7) // 8
        if nbytes == 0:
            return b""
        s = self.to_str().ljust(8 * nbytes, "0")
        return int(s, 2).to_bytes(nbytes, "big")

    def to_str(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            start, stop, step = idx.indices(self.length)
            if step != 1:
                raise ValueError("only contiguous slices are supported")
            width = max(0, stop - start)
            return BitVector((self.bits >> start) & ((1 << width) - 1), width)
        if idx < 0:
            idx += self.length
        if not 0 <= idx < self.length:
            raise IndexError(f"bit {idx} out of range for length {self.length}")
        return (self.bits >> idx) & 1

    def __iter__(self):
        return iter(self.to_list())

    def __xor__(self, other: BitVector) -> BitVector:
        return xor_add(self, other)

    def concat(self, other: BitVector) -> BitVector:
        return BitVector(self.bits | (other.bits << self.length), self.length + other.length)

    def weight(self) -> int:
        return self.bits.bit_count()

    def __repr__(self) -> str:
        shown = self.to_str() if self.length <= 64 else self.to_str()[:61] + "..."
        return f"BitVector('{shown}', length={self.length})"


def xor_add(a: BitVector, b: BitVector) -> BitVector:
    if a.length != b.length:
        raise DimensionError(f"length mismatch: {a.length} vs {b.length}")
    return BitVector(a.bits ^ b.bits, a.length)


def weight(a: BitVector) -> int:
    return a.bits.bit_count()


def hamming_distance(a: BitVector, b: BitVector) -> int:
    if a.length != b.length:
        raise DimensionError(f"length mismatch: {a.length} vs {b.length}")
    return (a.bits ^ b.bits).bit_count()


@dataclass(frozen=True, slots=True)
class BitMatrix:
    row_bits: tuple[int, ...]
    cols: int

    def __post_init__(self):
        if self.cols < 0:
            raise DimensionError("negative column count")
        for r in self.row_bits:
            if r < 0 or r >> self.cols:
                raise DimensionError(f"row has bits beyond column {self.cols}")

    @property
    def rows(self) -> int:
        return len(self.row_bits)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls((0,) * rows, cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int] | str], cols: int | None = None) -> BitMatrix:
        vecs = [BitVector.from_str(r) if isinstance(r, str) else BitVector.from_bits(r) for r in rows]
        if cols is None:
            cols = vecs[0].length if vecs else 0
        if any(v.length != cols for v in vecs):
            raise DimensionError("ragged rows")
        return cls(tuple(v.bits for v in vecs), cols)

    @classmethod
    def random(cls, rows: int, cols: int, rng: random.Random) -> BitMatrix:
        return cls(tuple(rng.getrandbits(cols) if cols else 0 for _ in range(rows)), cols)

    def row(self, i: int) -> BitVector:
        if not 0 <= i < self.rows:
            raise IndexError(f"row {i} out of range for {self.rows} rows")
        return BitVector(self.row_bits[i], self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) out of range for shape {self.shape}")
        return (self.row_bits[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [self.row(i).to_list() for i in range(self.rows)]

    def transpose(self) -> BitMatrix:
        out = [0] * self.cols
        for i, r in enumerate(self.row_bits):
            for j in _iter_set_bits(r):
                out[j] |= 1 << i
        return BitMatrix(tuple(out), self.rows)

    def hstack(self, other: BitMatrix) -> BitMatrix:
        if self.rows != other.rows:
            raise DimensionError(f"row mismatch: {self.rows} vs {other.rows}")
        return BitMatrix(tuple(a | (b << self.cols) for a, b in zip(self.row_bits, other.row_bits)),
                         self.cols + other.cols)

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.cols:
            raise DimensionError(f"column mismatch: {self.cols} vs {other.cols}")
        return BitMatrix(self.row_bits + other.row_bits, self.cols)

    def submatrix(self, row_start: int, row_stop: int, col_start: int, col_stop: int) -> BitMatrix:
        if not (0 <= row_start <= row_stop <= self.rows and 0 <= col_start <= col_stop <= self.cols):
            raise IndexError(f"submatrix bounds outside shape {self.shape}")
        mask = (1 << (col_stop - col_start)) - 1
        return BitMatrix(tuple((r >> col_start) & mask for r in self.row_bits[row_start:row_stop]),
                         col_stop - col_start)

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        return mat_mul(self, other)

    def is_zero(self) -> bool:
        return not any(self.row_bits)


def vec_mat_mul(x: BitVector, m: BitMatrix) -> BitVector:
    if x.length != m.rows:
        raise DimensionError(f"vector length {x.length} vs matrix rows {m.rows}")
    acc = 0
    rows = m.row_bits
    for i in _iter_set_bits(x.bits):
        acc ^= rows[i]
    return BitVector(acc, m.cols)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"inner dimensions differ: {a.cols} vs {b.rows}")
    out = []
    for r in a.row_bits:
        acc = 0
        for i in _iter_set_bits(r):
            acc ^= b.row_bits[i]
        out.append(acc)
    return BitMatrix(tuple(out), b.cols)
