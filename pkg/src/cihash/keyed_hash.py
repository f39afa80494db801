"""Keyed hash built as a chaotic-iterations post-treatment of a standard digest.

Pipeline for key ``(k1, k2, k3)`` and inner digest ``h`` of width N:

1. ``k2`` strategy vectors are drawn from an XOR CIPRNG seeded with ``k1``.
2. The message is padded (MD-strengthening, modulus N) and cut into N-bit blocks.
3. Block j is XORed with ``S^(j mod k2) ^ k3``.
4. ``H = h(k3 || premixed blocks)``.
5. ``H`` is iterated once per strategy term with ``f`` on the selected cells.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass

from .ciprng import GeneratorKind, GeneratorSpec, strategy_vectors
from .core import (
    NEGATION,
    BitVector,
    IterationFunction,
    StrategySequence,
    apply_f_on_subset,
)

LENGTH_FIELD_BITS = 64


class InnerDigest(enum.Enum):
    MD5 = ("md5", 128)
    SHA1 = ("sha1", 160)
    SHA224 = ("sha224", 224)
    SHA256 = ("sha256", 256)
    SHA384 = ("sha384", 384)
    SHA512 = ("sha512", 512)

    def __init__(self, algorithm: str, output_bits: int):
        self.algorithm = algorithm
        self.output_bits = output_bits

    @property
    def label(self) -> str:
        """Display name as used in report tables, e.g. ``SHA-256``."""
        return "MD5" if self is InnerDigest.MD5 else f"SHA-{self.algorithm[3:]}"

    @classmethod
    def parse(cls, name: "str | InnerDigest") -> "InnerDigest":
        if isinstance(name, cls):
            return name
        key = str(name).lower().replace("-", "").replace("_", "")
        for d in cls:
            if d.algorithm == key:
                return d
        raise ValueError(f"unknown digest {name!r}")

    def digest(self, data: bytes) -> bytes:
        return hashlib.new(self.algorithm, data).digest()


@dataclass(frozen=True)
class HashKey:
    k1: int = 50
    k2: int = 2
    k3: int = 50

    def __post_init__(self):
        if self.k1 < 0 or self.k3 < 0:
            raise ValueError("k1 and k3 must be non-negative")
        if self.k2 < 1:
            raise ValueError("k2 must be >= 1")

    def k3_vector(self, width: int) -> BitVector:
        return BitVector(width, self.k3 & ((1 << width) - 1))


@dataclass(frozen=True)
class NormalizedMessage:
    """Padded message held as one big-endian integer of ``total_bits`` bits."""

    width: int
    value: int
    total_bits: int

    def __post_init__(self):
        if self.total_bits <= 0 or self.total_bits % self.width:
            raise ValueError("total length must be a positive multiple of the block width")

    @property
    def block_count(self) -> int:
        return self.total_bits // self.width

    @property
    def blocks(self) -> list[BitVector]:
        n, count = self.width, self.block_count
        low = (1 << n) - 1
        return [
            BitVector(n, (self.value >> (n * (count - 1 - j))) & low) for j in range(count)
        ]

    @classmethod
    def from_blocks(cls, blocks: list[BitVector]) -> "NormalizedMessage":
        if not blocks:
            raise ValueError("need at least one block")
        n = blocks[0].width
        value = 0
        for b in blocks:
            if b.width != n:
                raise ValueError("all blocks must share one width")
            value = (value << n) | b.value
        return cls(n, value, n * len(blocks))

    def to_bytes(self) -> bytes:
        if self.total_bits % 8:
            raise ValueError("message length is not a whole number of bytes")
        return self.value.to_bytes(self.total_bits // 8, "big")


def normalize(message: bytes, width: int) -> NormalizedMessage:
    """MD-strengthening padding to a multiple of ``width`` bits.

    Appends a 1 bit, the fewest 0 bits that work, then the 64-bit big-endian
    bit length of ``message``.
    """
    if width < 1:
        raise ValueError("width must be >= 1")
    length = 8 * len(message)
    if length >= 1 << LENGTH_FIELD_BITS:
        raise ValueError("message too long for a 64-bit length field")
    zeros = -(length + 1 + LENGTH_FIELD_BITS) % width
    tail = 1 + zeros + LENGTH_FIELD_BITS
    value = (int.from_bytes(message, "big") << tail) | (1 << (tail - 1)) | length
    return NormalizedMessage(width, value, length + tail)


def _tiled_mask(masks: list[int], width: int, blocks: int) -> int:
    cycle = "".join(format(m, f"0{width}b") for m in masks)
    reps, rest = divmod(blocks, len(masks))
    return int(cycle * reps + cycle[: rest * width] or "0", 2)


def premix(message: NormalizedMessage, strategy: StrategySequence, k3vec: BitVector) -> NormalizedMessage:
    """XOR block j with ``S^(j mod k2) ^ k3``."""
    n = message.width
    if strategy.width != n or k3vec.width != n:
        raise ValueError("message, strategy and k3 widths must match")
    if not len(strategy):
        raise ValueError("strategy is empty")
    masks = [t.mask ^ k3vec.value for t in strategy]
    mask = _tiled_mask(masks, n, message.block_count)
    return NormalizedMessage(n, message.value ^ mask, message.total_bits)


def inner_digest(digest: InnerDigest, k3vec: BitVector, message: NormalizedMessage) -> BitVector:
    if k3vec.width != digest.output_bits:
        raise ValueError("k3 vector width must equal the digest size")
    raw = digest.digest(k3vec.to_bytes() + message.to_bytes())
    return BitVector.from_bytes(raw)


def ci_posttreatment(
    h: BitVector, strategy: StrategySequence, f: IterationFunction = NEGATION
) -> BitVector:
    """Iterate ``f`` on ``h`` once per strategy term, on that term's cells."""
    if strategy.width != h.width:
        raise ValueError("strategy and digest widths must match")
    for subset in strategy:
        h = apply_f_on_subset(f, subset, h)
    return h


def derive_strategy(key: HashKey, width: int, generator: "GeneratorKind | str" = GeneratorKind.BBS) -> StrategySequence:
    return strategy_vectors(GeneratorSpec(GeneratorKind.parse(generator), key.k1), key.k2, width)


def hash_with_strategy(
    message: bytes,
    strategy: StrategySequence,
    k3vec: BitVector,
    digest: InnerDigest,
    f: IterationFunction = NEGATION,
) -> BitVector:
    """Hash ``message`` with a precomputed strategy; lets callers reuse one key cheaply."""
    normalized = normalize(message, digest.output_bits)
    mixed = premix(normalized, strategy, k3vec)
    return ci_posttreatment(inner_digest(digest, k3vec, mixed), strategy, f)


def chaotic_hash(
    key: HashKey,
    message: bytes,
    digest: "InnerDigest | str" = InnerDigest.MD5,
    generator: "GeneratorKind | str" = GeneratorKind.BBS,
    f: IterationFunction = NEGATION,
) -> BitVector:
    """The keyed hash of ``message``; output width is the inner digest size."""
    digest = InnerDigest.parse(digest)
    n = digest.output_bits
    strategy = derive_strategy(key, n, generator)
    return hash_with_strategy(message, strategy, key.k3_vector(n), digest, f)


def hexdigest(h: BitVector) -> str:
    if h.width % 4:
        raise ValueError(f"width {h.width} is not a multiple of 4")
    return format(h.value, f"0{h.width // 4}X")
