"""Matrix embedding with a staircase-generator code.

A cover block of n bits carries an (n - k)-bit message as its syndrome.  To
embed, the decoder looks for a codeword close to a word in the coset
``y H^T + m``; the difference is the change pattern applied to the cover.
"""
from __future__ import annotations

from dataclasses import dataclass

from .codes import StGenCode, syndrome
from .decoder import DecoderConfig, decode_close
from .gf2 import BitVector, DimensionError


@dataclass(frozen=True)
class StegoContext:
    code: StGenCode
    decoder_cfg: DecoderConfig = DecoderConfig()

    @property
    def message_bits(self) -> int:
        return self.code.n - self.code.k

    @property
    def block_bits(self) -> int:
        return self.code.n


def emb(ctx: StegoContext, y: BitVector, m: BitVector) -> tuple[BitVector, int]:
    """Return the stego block and the number of flipped cover bits."""
    code = ctx.code
    if y.length != code.n:
        raise DimensionError(f"cover block has {y.length} bits, need {code.n}")
    if m.length != code.r:
        raise DimensionError(f"message has {m.length} bits, need {code.r}")
    z = syndrome(code, y) ^ m
    # systematic coset representative: zero message part, z on the parity part
    c0 = BitVector(z.bits << code.k, code.n)
    assert syndrome(code, c0) == z
    result = decode_close(code, c0, ctx.decoder_cfg)
    e = result.e
    # the coset representative itself is a valid change pattern; keep it when lighter
    if c0.weight() < result.weight:
        e = c0
    return y ^ e, e.weight()


def ext(ctx: StegoContext, y_prime: BitVector) -> BitVector:
    if y_prime.length != ctx.code.n:
        raise DimensionError(f"stego block has {y_prime.length} bits, need {ctx.code.n}")
    return syndrome(ctx.code, y_prime)


def rate_and_efficiency(ctx: StegoContext, measured_Ra: float) -> tuple[float, float]:
    """Embedding rate (n-k)/n and average efficiency (n-k)/R_a."""
    n, k = ctx.code.n, ctx.code.k
    if n == k:
        raise ValueError("code carries no message bits")
    if not measured_Ra > 0:
        raise ValueError(f"average distortion must be positive, got {measured_Ra}")
    return (n - k) / n, (n - k) / measured_Ra
