#!/usr/bin/python3

import math
import sys
from typing import Callable, Optional, Tuple

from zigrand._config import CONFIG
from zigrand.exceptions import InvalidParameter
from zigrand.rng.sources import BitSource

# exponent of the smallest subnormal double, 2**-1074
MIN_SUBNORMAL_EXPONENT = 1 - sys.float_info.min_exp + sys.float_info.mant_dig - 1


def trailing_zeros(value: int) -> int:
    """Number of trailing zero bits of a positive int, counted one bit at a time."""
    count = 0
    while not value & 1:
        value >>= 1
        count += 1
    return count


def _trailing_zeros_fast(value: int) -> int:
    return (value & -value).bit_length() - 1


class CanonicalFloatGen:

    """
    Generator of uniform floats in [0, 1) where every representable value is reachable.

    A source word is split in two: the high `fraction_bits` bits become the fraction of
    `m` in [1, 2), and the low `bits - fraction_bits` bits select the binary exponent
    through a table of powers of two. The exponent is geometric, so each binade
    [2**-(k+1), 2**-k) is hit with probability 2**-(k+1) and keeps a full random fraction.

    The multiplier table is built eagerly and never mutated afterwards.
    """

    def __init__(
        self, bits: int = 64, fraction_bits: int = 52, fast_ctz: Optional[bool] = None
    ) -> None:
        if bits <= fraction_bits:
            raise InvalidParameter(
                f"Source words of {bits} bits cannot fill a {fraction_bits}-bit fraction"
            )
        if fast_ctz is None:
            fast_ctz = CONFIG.settings["rng"]["fast_ctz"]
        self.bits = bits
        self.fraction_bits = fraction_bits
        self.low_bits = bits - fraction_bits
        self.low_mask = (1 << self.low_bits) - 1
        self.fraction_scale = 2.0 ** -fraction_bits
        self.ctz: Callable[[int], int] = _trailing_zeros_fast if fast_ctz else trailing_zeros
        self.multiplier_table: Tuple[float, ...] = (0.0,) + tuple(
            2.0 ** -(1 + self.ctz(r)) for r in range(1, 1 << self.low_bits)
        )

    def __call__(self, src: BitSource) -> float:
        return canonical_real(self, src)

    def __repr__(self) -> str:
        return f"<CanonicalFloatGen bits={self.bits} fraction_bits={self.fraction_bits}>"


def canonical_real(gen: CanonicalFloatGen, src: BitSource) -> float:
    """
    Returns a uniform float in [0, 1) with a fully random fraction.

    The fast path costs one word, a shift, a mask and a table lookup. It is left only
    when all low bits are zero, which happens with probability 2**(fraction_bits - bits).
    """
    word = src.next_bits()
    r = word & gen.low_mask
    m = 1.0 + (word >> gen.low_bits) * gen.fraction_scale
    if r:
        return m * gen.multiplier_table[r]
    return _exponent_fallback(gen, src, m)


def _exponent_fallback(gen: CanonicalFloatGen, src: BitSource, m: float) -> float:
    # the low bits were all zero: keep counting zeros over fresh words
    g = 1 + gen.low_bits
    while True:
        word = src.next_bits()
        if word:
            g += gen.ctz(word)
            break
        g += src.bits
        if g > MIN_SUBNORMAL_EXPONENT:
            return 0.0
    if g > MIN_SUBNORMAL_EXPONENT:
        return 0.0
    return math.ldexp(m, -g)


def fixed_real(src: BitSource) -> float:
    """
    Returns k * 2**-bits for a uniform integer word k.

    Words wider than a double's significand are truncated toward zero, so the result
    stays below 1.0 and the spacing near zero is exactly 2**-bits.
    """
    k = src.next_bits()
    shift = k.bit_length() - 53
    if shift > 0:
        return math.ldexp(k >> shift, shift - src.bits)
    return math.ldexp(k, -src.bits)
