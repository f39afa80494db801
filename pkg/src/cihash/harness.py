"""Diffusion/confusion and collision experiments over single-bit message flips.

Both experiments hash the original message once, then hash ``trials`` copies
each with one bit flipped. Flip positions come from a SplitMix64 stream seeded
with ``eval_seed``, so a baseline run (plain inner digest) and a keyed run with
the same seed see exactly the same positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from .ciprng import GeneratorKind
from .core import BitVector, hamming_distance
from .keyed_hash import HashKey, InnerDigest, derive_strategy, hash_with_strategy, hexdigest

MASK64 = (1 << 64) - 1
HIT_BUCKETS = 5


def default_message() -> bytes:
    """The bundled poem used as the default plain text."""
    return resources.files("cihash").joinpath("data/ulalume.txt").read_bytes()


def splitmix64(seed: int):
    state = seed & MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        yield z ^ (z >> 31)


def flip_positions(seed: int, count: int, nbits: int) -> list[int]:
    """``count`` positions in ``[0, nbits)``, uniform with replacement."""
    if nbits < 1:
        raise ValueError("need at least one bit to flip")
    rng = splitmix64(seed)
    return [(next(rng) * nbits) >> 64 for _ in range(count)]


def flip_bit(message: bytes, position: int) -> bytes:
    """Copy of ``message`` with bit ``position`` inverted (bit 0 = MSB of byte 0)."""
    if not 0 <= position < 8 * len(message):
        raise IndexError(f"bit {position} outside message of {8 * len(message)} bits")
    out = bytearray(message)
    out[position >> 3] ^= 0x80 >> (position & 7)
    return bytes(out)


@dataclass
class TrialConfig:
    trials: int = 1000
    eval_seed: int = 0
    key: HashKey = field(default_factory=HashKey)
    digest: InnerDigest = InnerDigest.MD5
    generator: GeneratorKind = GeneratorKind.BBS
    message: bytes | None = None
    baseline: bool = False

    def __post_init__(self):
        self.digest = InnerDigest.parse(self.digest)
        self.generator = GeneratorKind.parse(self.generator)
        if self.message is None:
            self.message = default_message()
        if self.trials < 2:
            raise ValueError("trials must be >= 2")
        if not self.message:
            raise ValueError("message must contain at least one bit")

    def hasher(self) -> Callable[[bytes], BitVector]:
        """Message -> digest function for this configuration; the key schedule is computed once."""
        digest = self.digest
        if self.baseline:
            return lambda m: BitVector.from_bytes(digest.digest(m))
        n = digest.output_bits
        strategy = derive_strategy(self.key, n, self.generator)
        k3vec = self.key.k3_vector(n)
        return lambda m: hash_with_strategy(m, strategy, k3vec, digest)

    @property
    def hash_type(self) -> str:
        return self.digest.label


@dataclass
class DiffusionStats:
    b_values: list[int]
    b_mean: float
    p_mean: float
    b_std: float
    p_std: float
    length: int

    def as_dict(self) -> dict:
        return {
            "B_mean": self.b_mean,
            "P": self.p_mean,
            "B_std": self.b_std,
            "P_std": self.p_std,
            "L": self.length,
            "B_values": list(self.b_values),
        }


def diffusion_stats(b_values: list[int], length: int) -> DiffusionStats:
    """Mean changed bits and changed-probability with their sample deviations.

    Deviations use squared residuals and the ``1/(n-1)`` normalisation.
    """
    n = len(b_values)
    if n < 2:
        raise ValueError("need at least two samples")
    b_mean = sum(b_values) / n
    p = b_mean / length
    b_var = sum((b - b_mean) ** 2 for b in b_values) / (n - 1)
    p_var = sum((b / length - p) ** 2 for b in b_values) / (n - 1)
    return DiffusionStats(
        b_values=list(b_values),
        b_mean=b_mean,
        p_mean=100.0 * p,
        b_std=math.sqrt(b_var),
        p_std=100.0 * math.sqrt(p_var),
        length=length,
    )


def diffusion_test(cfg: TrialConfig) -> DiffusionStats:
    hasher = cfg.hasher()
    message = cfg.message
    h0 = hasher(message)
    b_values = [
        hamming_distance(h0, hasher(flip_bit(message, pos)))
        for pos in flip_positions(cfg.eval_seed, cfg.trials, 8 * len(message))
    ]
    return diffusion_stats(b_values, h0.width)


@dataclass
class CollisionStats:
    hits_histogram: list[int]
    d_sum: int
    d_per_char: float
    trials: int
    chars_per_digest: int

    @property
    def hits_buckets(self) -> list[int]:
        """Counts for 0..4 equal bytes, as tabulated."""
        return (self.hits_histogram + [0] * HIT_BUCKETS)[:HIT_BUCKETS]

    @property
    def hits_overflow(self) -> int:
        """Trials with five or more equal bytes."""
        return sum(self.hits_histogram[HIT_BUCKETS:])

    def as_dict(self) -> dict:
        return {
            "hits": self.hits_buckets,
            "hits_5_or_more": self.hits_overflow,
            "hits_histogram": list(self.hits_histogram),
            "d_sum": self.d_sum,
            "d_per_char": self.d_per_char,
            "trials": self.trials,
            "chars_per_digest": self.chars_per_digest,
        }


def compare_digests(a: bytes, b: bytes) -> tuple[int, int]:
    """Return (equal byte positions, sum of absolute byte differences)."""
    if len(a) != len(b):
        raise ValueError("digests differ in length")
    hits = sum(x == y for x, y in zip(a, b))
    d = sum(abs(x - y) for x, y in zip(a, b))
    return hits, d


def collision_stats(pairs: list[tuple[bytes, bytes]]) -> CollisionStats:
    if not pairs:
        raise ValueError("no digest pairs")
    chars = len(pairs[0][0])
    histogram = [0] * (chars + 1)
    d_sum = 0
    for a, b in pairs:
        hits, d = compare_digests(a, b)
        histogram[hits] += 1
        d_sum += d
    return CollisionStats(
        hits_histogram=histogram,
        d_sum=d_sum,
        d_per_char=d_sum / (len(pairs) * chars),
        trials=len(pairs),
        chars_per_digest=chars,
    )


def collision_test(cfg: TrialConfig) -> CollisionStats:
    hasher = cfg.hasher()
    message = cfg.message
    h0 = hasher(message).to_bytes()
    pairs = [
        (h0, hasher(flip_bit(message, pos)).to_bytes())
        for pos in flip_positions(cfg.eval_seed, cfg.trials, 8 * len(message))
    ]
    return collision_stats(pairs)


def distribution_dump(message: bytes, digest: BitVector) -> dict:
    """Records for plotting: message byte values, digest hex-digit values, digest bits.

    Indices are 1-based.
    """
    hexed = hexdigest(digest)
    return {
        "message": [(i, b) for i, b in enumerate(message, 1)],
        "digest": [(i, int(c, 16)) for i, c in enumerate(hexed, 1)],
        "bits": digest.to_bitstring(),
    }
