"""Keyed hash post-treatment of standard digests by general chaotic iterations."""

from .ciprng import GeneratorKind, GeneratorSpec, StreamState, ciprng_next, raw_bits, strategy_vectors
from .core import (
    NEGATION,
    BitVector,
    IterationFunction,
    StrategySequence,
    StrategySubset,
    SystemPoint,
    apply_f_on_subset,
    gfci_iterate,
    gfci_step,
    hamming_distance,
    point_distance,
    psi,
    strategy_distance,
)
from .keyed_hash import (
    HashKey,
    InnerDigest,
    NormalizedMessage,
    chaotic_hash,
    ci_posttreatment,
    hexdigest,
    inner_digest,
    normalize,
    premix,
)

__version__ = "0.1.0"
