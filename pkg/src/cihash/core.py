"""General chaotic iterations on fixed-width Boolean vectors.

State vectors and strategy subsets are stored as Python ints. Cell 1 is the
most significant (leftmost) bit, cell N the least significant, so the hex
rendering of a vector reads cells left to right.

The phase-space map ``G_f(S, E) = (shift(S), F_f(head(S), E))`` and the
distance ``d = d_e + d_s`` are provided so that sensitivity to initial
conditions can be measured on finite strategy prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

DEFAULT_TERMS = 16


class WidthMismatch(ValueError):
    pass


def _check_width(*widths: int) -> int:
    first = widths[0]
    for w in widths[1:]:
        if w != first:
            raise WidthMismatch(f"width mismatch: {first} != {w}")
    return first


@dataclass(frozen=True)
class BitVector:
    """Immutable N-bit Boolean vector; cell 1 is the most significant bit."""

    width: int
    value: int = 0

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be >= 1")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value does not fit in {self.width} bits")

    @classmethod
    def zeros(cls, width: int) -> "BitVector":
        return cls(width, 0)

    @classmethod
    def ones(cls, width: int) -> "BitVector":
        return cls(width, (1 << width) - 1)

    @classmethod
    def from_bits(cls, bits: str | Sequence[int]) -> "BitVector":
        """Build from a '0'/'1' string or a sequence of 0/1 ints, cell 1 first."""
        if isinstance(bits, str):
            text = bits
        else:
            text = "".join("1" if b else "0" for b in bits)
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {bits!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def from_bytes(cls, data: bytes) -> "BitVector":
        return cls(8 * len(data), int.from_bytes(data, "big"))

    @classmethod
    def from_hex(cls, text: str) -> "BitVector":
        text = text.strip()
        if text[:2].lower() == "0x":
            text = text[2:]
        if not text:
            raise ValueError("empty hex string")
        return cls(4 * len(text), int(text, 16))

    def bit(self, i: int) -> int:
        if not 1 <= i <= self.width:
            raise IndexError(f"cell {i} outside [1, {self.width}]")
        return (self.value >> (self.width - i)) & 1

    def bits(self) -> list[int]:
        return [int(c) for c in self.to_bitstring()]

    def to_bitstring(self) -> str:
        return format(self.value, f"0{self.width}b")

    def to_bytes(self) -> bytes:
        if self.width % 8:
            raise ValueError(f"width {self.width} is not a whole number of bytes")
        return self.value.to_bytes(self.width // 8, "big")

    def popcount(self) -> int:
        return bin(self.value).count("1")

    def __xor__(self, other: "BitVector") -> "BitVector":
        _check_width(self.width, other.width)
        return BitVector(self.width, self.value ^ other.value)

    def __and__(self, other: "BitVector") -> "BitVector":
        _check_width(self.width, other.width)
        return BitVector(self.width, self.value & other.value)

    def __or__(self, other: "BitVector") -> "BitVector":
        _check_width(self.width, other.width)
        return BitVector(self.width, self.value | other.value)

    def __invert__(self) -> "BitVector":
        return BitVector(self.width, self.value ^ ((1 << self.width) - 1))

    def __len__(self) -> int:
        return self.width

    def __str__(self) -> str:
        return self.to_bitstring()


@dataclass(frozen=True)
class StrategySubset:
    """A subset of [1, N] held as an N-bit membership mask (cell 1 = MSB)."""

    width: int
    mask: int = 0

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be >= 1")
        if not 0 <= self.mask < (1 << self.width):
            raise ValueError(f"mask does not fit in {self.width} bits")

    @classmethod
    def from_indices(cls, width: int, indices: Iterable[int]) -> "StrategySubset":
        mask = 0
        for i in indices:
            if not 1 <= i <= width:
                raise IndexError(f"cell {i} outside [1, {width}]")
            mask |= 1 << (width - i)
        return cls(width, mask)

    @classmethod
    def from_vector(cls, vec: BitVector) -> "StrategySubset":
        return cls(vec.width, vec.value)

    @classmethod
    def full(cls, width: int) -> "StrategySubset":
        return cls(width, (1 << width) - 1)

    @property
    def members(self) -> frozenset[int]:
        return frozenset(
            i for i in range(1, self.width + 1) if (self.mask >> (self.width - i)) & 1
        )

    def as_vector(self) -> BitVector:
        return BitVector(self.width, self.mask)

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.width and bool((self.mask >> (self.width - i)) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def symmetric_difference(self, other: "StrategySubset") -> "StrategySubset":
        _check_width(self.width, other.width)
        return StrategySubset(self.width, self.mask ^ other.mask)


@dataclass(frozen=True)
class StrategySequence:
    """Finite prefix (S^0, S^1, ...) of a subset strategy."""

    width: int
    terms: tuple[StrategySubset, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        _check_width(self.width, *(t.width for t in self.terms))

    @classmethod
    def from_masks(cls, width: int, masks: Iterable[int]) -> "StrategySequence":
        return cls(width, tuple(StrategySubset(width, m) for m in masks))

    @classmethod
    def from_index_sets(cls, width: int, sets: Iterable[Iterable[int]]) -> "StrategySequence":
        return cls(width, tuple(StrategySubset.from_indices(width, s) for s in sets))

    def head(self) -> StrategySubset:
        if not self.terms:
            raise ValueError("empty strategy has no initial term")
        return self.terms[0]

    def shift(self) -> "StrategySequence":
        if not self.terms:
            raise ValueError("cannot shift an empty strategy")
        return StrategySequence(self.width, self.terms[1:])

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, n: int) -> StrategySubset:
        return self.terms[n]

    def __iter__(self):
        return iter(self.terms)


@dataclass(frozen=True)
class IterationFunction:
    """A named total map B^N -> B^N used to update the selected cells."""

    name: str
    map: Callable[[BitVector], BitVector]

    def __call__(self, x: BitVector) -> BitVector:
        return self.map(x)


def _negate(x: BitVector) -> BitVector:
    return ~x


NEGATION = IterationFunction("negation", _negate)

ITERATION_FUNCTIONS: dict[str, IterationFunction] = {NEGATION.name: NEGATION}


def register_iteration_function(func: IterationFunction) -> None:
    if func.name in ITERATION_FUNCTIONS:
        raise ValueError(f"iteration function {func.name!r} already registered")
    ITERATION_FUNCTIONS[func.name] = func


def get_iteration_function(name: str) -> IterationFunction:
    try:
        return ITERATION_FUNCTIONS[name]
    except KeyError:
        raise KeyError(f"unknown iteration function {name!r}") from None


@dataclass(frozen=True)
class SystemPoint:
    strategy: StrategySequence
    state: BitVector

    def __post_init__(self):
        _check_width(self.strategy.width, self.state.width)


def psi(i: int, subset: StrategySubset) -> int:
    """Membership indicator: 1 if cell ``i`` is in ``subset``, else 0."""
    if not 1 <= i <= subset.width:
        raise IndexError(f"cell {i} outside [1, {subset.width}]")
    return (subset.mask >> (subset.width - i)) & 1


def apply_f_on_subset(f: IterationFunction, subset: StrategySubset, state: BitVector) -> BitVector:
    """Update the cells in ``subset`` with ``f(state)``; leave the others as is.

    Written with the membership mask playing the role of psi: kept cells are
    ``state & ~mask`` and iterated cells ``f(state) & mask``.
    """
    n = _check_width(subset.width, state.width)
    image = f(state)
    _check_width(n, image.width)
    keep = ((1 << n) - 1) ^ subset.mask
    return BitVector(n, (state.value & keep) | (image.value & subset.mask))


def gfci_iterate(
    f: IterationFunction, x0: BitVector, strategy: StrategySequence, steps: int
) -> BitVector:
    """Run ``steps`` chaotic iterations of ``f`` from ``x0`` along ``strategy``."""
    _check_width(x0.width, strategy.width)
    if steps < 0:
        raise ValueError("steps must be non-negative")
    if steps > len(strategy):
        raise ValueError(f"strategy exhausted: {steps} steps requested, {len(strategy)} terms")
    x = x0
    for n in range(steps):
        x = apply_f_on_subset(f, strategy.terms[n], x)
    return x


def gfci_step(f: IterationFunction, point: SystemPoint) -> SystemPoint:
    strategy = point.strategy
    return SystemPoint(strategy.shift(), apply_f_on_subset(f, strategy.head(), point.state))


def hamming_distance(a: BitVector, b: BitVector) -> int:
    _check_width(a.width, b.width)
    return bin(a.value ^ b.value).count("1")


def strategy_distance(s: StrategySequence, t: StrategySequence, terms: int = DEFAULT_TERMS) -> float:
    """K-term truncation of ``(9/N) * sum_k |S^k xor T^k| / 10^k``.

    ``S^1`` is the first stored term. The dropped tail is at most ``10**-terms``.
    The sum is accumulated in integers and rounded once.
    """
    n = _check_width(s.width, t.width)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    if len(s) < terms or len(t) < terms:
        raise ValueError(f"need {terms} strategy terms, have {len(s)} and {len(t)}")
    acc = 0
    for k in range(terms):
        card = bin(s.terms[k].mask ^ t.terms[k].mask).count("1")
        acc += card * 10 ** (terms - 1 - k)
    return 9 * acc / (n * 10**terms)


def point_distance(x: SystemPoint, y: SystemPoint, terms: int = DEFAULT_TERMS) -> float:
    return hamming_distance(x.state, y.state) + strategy_distance(x.strategy, y.strategy, terms)
