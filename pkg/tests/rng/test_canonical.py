#!/usr/bin/python3

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis.strategies import integers

from zigrand.exceptions import InvalidParameter
from zigrand.rng import CanonicalFloatGen, canonical_real, fixed_real, make_source, trailing_zeros
from zigrand.rng.canonical import _trailing_zeros_fast


@pytest.fixture(scope="module")
def gen():
    return CanonicalFloatGen()


class CountingSource:
    def __init__(self, src):
        self.src = src
        self.bits = src.bits
        self.calls = 0

    def next_bits(self):
        self.calls += 1
        return self.src.next_bits()


def test_lowest_bit_set(gen, replay):
    assert canonical_real(gen, replay([0b1])) == 0.5


def test_trailing_zeros_set_exponent(gen, replay):
    assert canonical_real(gen, replay([0b100])) == 0.125


def test_fraction_from_high_bits(gen, replay):
    assert canonical_real(gen, replay([(1 << 63) | 1])) == 0.75
    assert canonical_real(gen, replay([(3 << 62) | 0b10])) == 0.4375


def test_largest_value_below_one(gen, replay):
    value = canonical_real(gen, replay([2 ** 64 - 1]))
    assert value < 1.0
    assert value == 1.0 - 2.0 ** -53


def test_slow_path(gen, replay):
    src = replay([0, 1])
    assert canonical_real(gen, src) == 2.0 ** -13
    assert src.calls == 2


def test_slow_path_matches_direct_computation(gen, replay):
    fraction = 0xABCDEF0123456
    words = [fraction << 12, 0b1000]
    value = canonical_real(gen, replay(words))
    # the exponent counts zeros over the concatenated bit string, low word first
    g = 1 + 12 + 3
    assert value == math.ldexp(1.0 + fraction * 2.0 ** -52, -g)


def test_slow_path_reaches_subnormals(gen, replay):
    value = canonical_real(gen, replay([0] + [0] * 16 + [1 << 20]))
    assert value == math.ldexp(1.0, -1057)
    assert 0.0 < value < 2.2250738585072014e-308


def test_exponent_exhaustion_returns_zero(gen, replay):
    src = replay([0] * 18)
    assert canonical_real(gen, src) == 0.0
    assert src.calls == 18


def test_multiplier_table(gen):
    table = gen.multiplier_table
    assert len(table) == 2 ** 12
    assert table[1] == 0.5
    assert table[2] == 0.25
    assert table[2 ** 11] == 2.0 ** -12
    assert all(table[r] == 2.0 ** -(1 + trailing_zeros(r)) for r in range(1, 2 ** 12))


def test_fast_ctz_table_matches():
    assert CanonicalFloatGen(fast_ctz=True).multiplier_table == CanonicalFloatGen(
        fast_ctz=False
    ).multiplier_table


def test_fast_ctz_from_config(config):
    config.settings["rng"]["fast_ctz"] = True
    assert CanonicalFloatGen().ctz is _trailing_zeros_fast


@given(value=integers(min_value=1, max_value=2 ** 64 - 1))
def test_trailing_zeros(value):
    assert trailing_zeros(value) == _trailing_zeros_fast(value)
    assert value >> trailing_zeros(value) & 1


def test_narrow_words_rejected():
    with pytest.raises(InvalidParameter):
        CanonicalFloatGen(bits=52, fraction_bits=52)
    with pytest.raises(InvalidParameter):
        CanonicalFloatGen(bits=32)


def test_float32_layout(replay):
    gen = CanonicalFloatGen(bits=32, fraction_bits=23)
    assert len(gen.multiplier_table) == 2 ** 9
    assert canonical_real(gen, replay([(1 << 31) | 0b10], bits=32)) == 0.375


def test_callable(gen, replay):
    assert gen(replay([0b1])) == 0.5


def test_fixed_real(replay):
    assert fixed_real(replay([0])) == 0.0
    assert fixed_real(replay([2 ** 63])) == 0.5
    assert fixed_real(replay([1])) == 2.0 ** -64
    assert fixed_real(replay([2 ** 64 - 1])) < 1.0


def test_fixed_real_granularity(replay):
    # no output lies strictly between 0 and 2**-64
    values = sorted(fixed_real(replay([k])) for k in range(4))
    assert values == [0.0, 2.0 ** -64, 2.0 ** -63, 3 * 2.0 ** -64]


def _draws(n, seed):
    gen = CanonicalFloatGen()
    src = CountingSource(make_source("mt19937_64", seed))
    return np.array([canonical_real(gen, src) for _ in range(n)]), src.calls


def _check_exponent_classes(values):
    n = len(values)
    for k in range(1, 11):
        p = 2.0 ** -k
        observed = np.count_nonzero(values < p) / n
        assert abs(observed - p) <= 4 * math.sqrt(p * (1 - p) / n)


def test_exponent_classes():
    values, _ = _draws(100000, 1)
    assert values.max() < 1.0
    assert values.min() >= 0.0
    _check_exponent_classes(values)


def test_fraction_bits_uniform():
    values, _ = _draws(100000, 2)
    # restrict to the binade [1/2, 1) and read the 52 fraction bits
    fractions = [int((2.0 * v - 1.0) * 2 ** 52) for v in values if v >= 0.5]
    n = len(fractions)
    for bit in range(52):
        frequency = sum((f >> bit) & 1 for f in fractions) / n
        assert abs(frequency - 0.5) <= 4 * 0.5 / math.sqrt(n)


@pytest.mark.slow
def test_exponent_classes_full_scale():
    n = 10 ** 7
    values, calls = _draws(n, 3)
    _check_exponent_classes(values)
    p = 2.0 ** -12
    slow_fraction = (calls - n) / n
    assert abs(slow_fraction - p) <= 4 * math.sqrt(p * (1 - p) / n)
