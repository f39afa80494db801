"""Bit generators and the XOR CIPRNG combiner that produces hash strategies.

Every generator is reduced to a stream of bits. Word-oriented generators
emit each 32-bit word most significant bit first; RC4 emits bytes MSB first;
BBS and the LFSR emit one bit per step. The XOR CIPRNG folds successive
N-bit chunks of that stream into its state: ``x <- x ^ S``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .core import BitVector, StrategySequence, StrategySubset

MASK32 = 0xFFFFFFFF


class GeneratorKind(str, enum.Enum):
    BBS = "bbs"
    LCG = "lcg"
    MT = "mt"
    XORSHIFT = "xorshift"
    RC4 = "rc4"
    LFSR = "lfsr"

    @classmethod
    def parse(cls, name: "str | GeneratorKind") -> "GeneratorKind":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise ValueError(f"unknown generator {name!r}") from None


DEFAULT_PARAMS: dict[GeneratorKind, dict[str, int]] = {
    GeneratorKind.BBS: {"p": 499, "q": 547},
    GeneratorKind.LCG: {"a": 1664525, "c": 1013904223},
    GeneratorKind.MT: {},
    GeneratorKind.XORSHIFT: {},
    GeneratorKind.RC4: {},
    GeneratorKind.LFSR: {},
}


@dataclass(frozen=True)
class GeneratorSpec:
    kind: GeneratorKind
    seed: int = 0
    params: Mapping[str, int] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", GeneratorKind.parse(self.kind))
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        unknown = set(self.params) - set(DEFAULT_PARAMS[self.kind])
        if unknown:
            raise ValueError(f"unknown parameters for {self.kind.value}: {sorted(unknown)}")

    def param(self, name: str) -> int:
        return self.params.get(name, DEFAULT_PARAMS[self.kind][name])


# --- bit sources -----------------------------------------------------------


def _word_bits(words: Iterator[int], size: int) -> Iterator[int]:
    for w in words:
        for shift in range(size - 1, -1, -1):
            yield (w >> shift) & 1


def bbs_bits(seed: int, p: int = 499, q: int = 547) -> Iterator[int]:
    """Blum Blum Shub: square modulo p*q, output the low bit of each state."""
    m = p * q
    x = seed * seed % m
    while x in (0, 1):
        x = (x + 1) ** 2 % m
    while True:
        x = x * x % m
        yield x & 1


def lcg_words(seed: int, a: int = 1664525, c: int = 1013904223) -> Iterator[int]:
    x = seed & MASK32
    while True:
        x = (a * x + c) & MASK32
        yield x


def xorshift32_words(seed: int) -> Iterator[int]:
    x = (seed & MASK32) or 1
    while True:
        x ^= (x << 13) & MASK32
        x ^= x >> 17
        x ^= (x << 5) & MASK32
        yield x


def mt19937_words(seed: int) -> Iterator[int]:
    """MT19937 seeded with the reference ``init_genrand`` routine."""
    mt = [0] * 624
    mt[0] = seed & MASK32
    for i in range(1, 624):
        mt[i] = (1812433253 * (mt[i - 1] ^ (mt[i - 1] >> 30)) + i) & MASK32
    while True:
        for i in range(624):
            y = (mt[i] & 0x80000000) | (mt[(i + 1) % 624] & 0x7FFFFFFF)
            v = mt[(i + 397) % 624] ^ (y >> 1)
            if y & 1:
                v ^= 0x9908B0DF
            mt[i] = v
        for y in mt:
            y ^= y >> 11
            y ^= (y << 7) & 0x9D2C5680
            y ^= (y << 15) & 0xEFC60000
            y ^= y >> 18
            yield y


def rc4_bytes(key: bytes) -> Iterator[int]:
    s = list(range(256))
    j = 0
    for i in range(256):
        j = (j + s[i] + key[i % len(key)]) & 0xFF
        s[i], s[j] = s[j], s[i]
    i = j = 0
    while True:
        i = (i + 1) & 0xFF
        j = (j + s[i]) & 0xFF
        s[i], s[j] = s[j], s[i]
        yield s[(s[i] + s[j]) & 0xFF]


def lfsr32_bits(seed: int) -> Iterator[int]:
    """Fibonacci LFSR with taps 32, 22, 2, 1; yields the bit shifted out."""
    s = (seed & MASK32) or 1
    while True:
        out = s & 1
        fb = (s ^ (s >> 10) ^ (s >> 30) ^ (s >> 31)) & 1
        s = (s >> 1) | (fb << 31)
        yield out


def bit_source(spec: GeneratorSpec) -> Iterator[int]:
    kind, seed = spec.kind, spec.seed
    if kind is GeneratorKind.BBS:
        return bbs_bits(seed, spec.param("p"), spec.param("q"))
    if kind is GeneratorKind.LCG:
        return _word_bits(lcg_words(seed, spec.param("a"), spec.param("c")), 32)
    if kind is GeneratorKind.MT:
        return _word_bits(mt19937_words(seed), 32)
    if kind is GeneratorKind.XORSHIFT:
        return _word_bits(xorshift32_words(seed), 32)
    if kind is GeneratorKind.RC4:
        return _word_bits(rc4_bytes((seed & MASK32).to_bytes(4, "big")), 8)
    if kind is GeneratorKind.LFSR:
        return lfsr32_bits(seed)
    raise ValueError(f"unsupported generator {kind!r}")


# --- streams ---------------------------------------------------------------


class StreamState:
    """Evolving generator state plus the N-bit XOR CIPRNG state.

    Single-owner: advance it from one thread only.
    """

    def __init__(self, spec: GeneratorSpec, width: int, x0: BitVector | None = None):
        if width < 1:
            raise ValueError("width must be >= 1")
        self.spec = spec
        self.width = width
        self.ci_state = x0 if x0 is not None else BitVector.zeros(width)
        if self.ci_state.width != width:
            raise ValueError("initial state width does not match stream width")
        self._bits = bit_source(spec)

    def __repr__(self):
        return f"StreamState({self.spec!r}, width={self.width}, ci_state={self.ci_state.to_bitstring()})"


def raw_bits(state: StreamState, count: int) -> str:
    """Next ``count`` raw generator bits as a '0'/'1' string."""
    if count < 0:
        raise ValueError("count must be non-negative")
    src = state._bits
    return "".join("1" if next(src) else "0" for _ in range(count))


def ciprng_next(state: StreamState) -> BitVector:
    chunk = raw_bits(state, state.width)
    state.ci_state = BitVector(state.width, state.ci_state.value ^ int(chunk, 2))
    return state.ci_state


def strategy_vectors(spec: GeneratorSpec, count: int, width: int) -> StrategySequence:
    """``count`` XOR CIPRNG outputs from a zero initial state, read as subset masks."""
    if count < 1:
        raise ValueError("count must be >= 1")
    stream = StreamState(spec, width)
    terms = tuple(StrategySubset(width, ciprng_next(stream).value) for _ in range(count))
    return StrategySequence(width, terms)
