"""Payload framing for byte-oriented covers.

A cover file is read MSB-first into consecutive n-bit blocks; bits after the
last whole block are never touched.  The embedded stream is a 32-bit
big-endian message bit length followed by the message bits, spread over as
many leading blocks as needed, (n - k) bits per block.  Unused syndrome bits
of the final block are set to the cover's own syndrome so they cost nothing.
"""
from __future__ import annotations

from dataclasses import dataclass

from .codes import syndrome
from .embed import StegoContext, emb, ext
from .gf2 import BitVector

LENGTH_PREFIX_BITS = 32


class CapacityError(ValueError):
    pass


class IntegrityError(ValueError):
    pass


@dataclass(frozen=True)
class EmbedStats:
    blocks: int
    blocks_used: int
    total_changes: int
    mean_changes: float
    capacity_bytes: int

    def as_dict(self) -> dict:
        return {
            "blocks": self.blocks,
            "blocks_used": self.blocks_used,
            "total_changes": self.total_changes,
            "mean_changes_per_block": self.mean_changes,
            "capacity_bytes": self.capacity_bytes,
        }


def capacity_bytes(ctx: StegoContext, cover_len_bytes: int) -> int:
    blocks = 8 * cover_len_bytes // ctx.block_bits
    return max(0, (blocks * ctx.message_bits - LENGTH_PREFIX_BITS) // 8)


def embed_bytes(ctx: StegoContext, cover: bytes, message: bytes) -> tuple[bytes, EmbedStats]:
    n, r = ctx.block_bits, ctx.message_bits
    blocks = 8 * len(cover) // n
    max_bytes = capacity_bytes(ctx, len(cover))
    if blocks == 0:
        raise CapacityError(f"cover of {len(cover)} bytes holds no {n}-bit block; max 0 bytes")
    if len(message) > max_bytes:
        raise CapacityError(f"message of {len(message)} bytes exceeds capacity; max {max_bytes} bytes")

    prefix = BitVector.from_str(format(8 * len(message), f"0{LENGTH_PREFIX_BITS}b"))
    stream = prefix.concat(BitVector.from_bytes(message))
    used = -(-stream.length // r)

    cover_bits = BitVector.from_bytes(cover)
    out = cover_bits.bits
    changes = 0
    for b in range(used):
        y = cover_bits[b * n:(b + 1) * n]
        chunk = stream[b * r:(b + 1) * r]
        if chunk.length < r:
            own = syndrome(ctx.code, y)
            chunk = chunk.concat(own[chunk.length:])
        y_prime, c = emb(ctx, y, chunk)
        out ^= (y.bits ^ y_prime.bits) << (b * n)
        changes += c
    stego = BitVector(out, cover_bits.length).to_bytes()
    return stego, EmbedStats(blocks, used, changes, changes / used, max_bytes)


def extract_bytes(ctx: StegoContext, stego: bytes) -> bytes:
    n, r = ctx.block_bits, ctx.message_bits
    bits = BitVector.from_bytes(stego)
    blocks = bits.length // n
    if blocks * r < LENGTH_PREFIX_BITS:
        raise IntegrityError(f"stego data holds {blocks} blocks, too few for a length prefix")

    collected = BitVector.zeros(0)
    b = 0

    def take(nbits: int) -> None:
        nonlocal collected, b
        while collected.length < nbits:
            collected = collected.concat(ext(ctx, bits[b * n:(b + 1) * n]))
            b += 1

    take(LENGTH_PREFIX_BITS)
    msg_bits = int(collected[:LENGTH_PREFIX_BITS].to_str(), 2)
    if msg_bits % 8 or LENGTH_PREFIX_BITS + msg_bits > blocks * r:
        raise IntegrityError(f"length prefix {msg_bits} bits is not a valid payload for this cover")
    take(LENGTH_PREFIX_BITS + msg_bits)
    return collected[LENGTH_PREFIX_BITS:LENGTH_PREFIX_BITS + msg_bits].to_bytes()
