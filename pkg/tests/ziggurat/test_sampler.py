#!/usr/bin/python3

import math

import numpy as np
import pytest

from zigrand.distributions import DistributionSpec, distribution_for, make_sampler
from zigrand.exceptions import InvalidParameter
from zigrand.rng import BitSource, fixed_real, make_source
from zigrand.ziggurat import (
    AsymmetricSampler,
    ZigguratSampler,
    build_slice_sampler,
    tail_uniform_for,
)
from zigrand.ziggurat.tail.bases import default_uniform

ALL_ONES = (1 << 64) - 1


def _slice(family, **params):
    return distribution_for(DistributionSpec.create(family, **params)).slices()[1]


@pytest.fixture(scope="module")
def exponential():
    return build_slice_sampler(_slice("exponential"), 8)


@pytest.fixture(scope="module")
def normal_sampler():
    return build_slice_sampler(_slice("normal"), 8, symmetric=True)


def test_bit_layout(exponential, normal_sampler):
    assert exponential.index_bits == 3
    assert exponential.sign_bit == 0
    assert exponential.value_mask == ALL_ONES ^ 0b111
    assert normal_sampler.sign_bit == 0b1000
    assert normal_sampler.value_mask == ALL_ONES ^ 0b1111
    assert build_slice_sampler(_slice("exponential"), 12).index_mask == 0b1111


def test_fast_accept(replay, exponential):
    src = replay([(1 << 3) | 3])
    assert exponential.sample(src) == 8 * exponential.scaled_widths[3]
    assert src.calls == 1


def test_index_redraw(replay):
    sampler = build_slice_sampler(_slice("exponential"), 12)
    src = replay([(1 << 4) | 13, (1 << 4) | 2])
    assert sampler.sample(src) == 16 * sampler.scaled_widths[2]
    assert src.calls == 2


def test_sign_bit(replay, normal_sampler):
    word = (1 << 4) | 2
    positive = normal_sampler.sample(replay([word]))
    assert positive > 0
    assert normal_sampler.sample(replay([word | 0b1000])) == -positive


def _between(sampler, j):
    # a word in region j whose proposal lies between the region edges
    widths = sampler.table.widths
    fraction = 0.5 * (widths[j] + widths[j + 1]) / widths[j]
    return (int(fraction * 2 ** 61) << 3) | j


def test_density_test_accepts(replay, exponential):
    j = 3
    src = replay([_between(exponential, j), 0])
    value = exponential.sample(src)
    assert exponential.table.x[j + 1] < value < exponential.table.x[j]
    assert src.calls == 2


def test_density_test_retries_in_region(replay, exponential):
    j = 3
    src = replay([_between(exponential, j), ALL_ONES, 1 << 3])
    # the retry reuses region 3 without drawing a new index
    assert exponential.sample(src) == 8 * exponential.scaled_widths[j]
    assert src.calls == 3


def test_tail_path(replay, mocker, exponential):
    mocker.patch.object(exponential.tail, "sample", return_value=7.5)
    src = replay([ALL_ONES ^ 0b111])
    assert exponential.sample(src) == 7.5
    assert exponential.tail.sample.call_count == 1


def test_tail_reflected(replay, mocker, normal_sampler):
    mocker.patch.object(normal_sampler.tail, "sample", return_value=4.0)
    assert normal_sampler.sample(replay([ALL_ONES ^ 0b111])) == -4.0
    assert normal_sampler.sample(replay([ALL_ONES ^ 0b1111])) == 4.0


def test_peak_path(replay, mocker):
    sampler = build_slice_sampler(_slice("chi_squared", dof=1.0), 8)
    assert sampler.top == 7
    mocker.patch.object(sampler.peak, "sample", return_value=1e-3)
    # the topmost region never accepts without the peak sampler
    assert sampler.sample(replay([(1 << 3) | 7])) == 1e-3


def test_sampler_validation(exponential):
    table = exponential.table
    with pytest.raises(InvalidParameter):
        ZigguratSampler(table, exponential.pdf)
    with pytest.raises(InvalidParameter):
        ZigguratSampler(table, exponential.pdf, exponential.tail, peak=object())


def test_describe(exponential):
    data = exponential.describe()
    assert data["regions"] == 8
    assert data["symmetric"] is False
    assert data["x1"] == exponential.table.x[1]
    assert data["tail"]["strategy"] == "iccdf"
    assert data["tail"]["efficiency"] == pytest.approx(1.0)
    assert "peak" not in data
    assert exponential.n_regions == 8
    assert exponential.peak_efficiency() is None
    assert repr(exponential).startswith("<ZigguratSampler n=8")


def test_describe_peak():
    sampler = build_slice_sampler(_slice("gamma", shape=0.5), 64)
    data = sampler.describe()
    assert data["peak"]["q"] == 0.5
    assert 0 < data["peak"]["efficiency"] < 1


def test_tail_uniform_for():
    assert tail_uniform_for("canonical") is default_uniform()
    assert tail_uniform_for("fixed") is fixed_real
    with pytest.raises(InvalidParameter):
        tail_uniform_for("gaussian")


def test_fixed_tail_uniform():
    sampler = build_slice_sampler(_slice("exponential"), 8, tail_uniform="fixed")
    assert sampler.tail.uniform is fixed_real


def test_asymmetric_sampler():
    spec = DistributionSpec.create("gamma", shape=2.5)
    sampler = make_sampler(spec, 64)
    assert isinstance(sampler, AsymmetricSampler)
    dist = distribution_for(spec)
    assert sampler.right_mass_ratio == pytest.approx(dist.ccdf(1.5))
    assert sampler.n_regions == 64
    data = sampler.describe()
    assert data["left"]["direction"] == "increasing"
    assert data["right"]["direction"] == "decreasing"
    assert "tail" not in data["left"]


def test_asymmetric_choice(replay, mocker):
    left = mocker.Mock()
    right = mocker.Mock()
    left.sample.return_value = -1.0
    right.sample.return_value = 1.0
    sampler = AsymmetricSampler(left, right, 0.25, uniform=fixed_real)
    assert sampler.sample(replay([0])) == 1.0
    assert sampler.sample(replay([ALL_ONES])) == -1.0
    with pytest.raises(InvalidParameter):
        AsymmetricSampler(left, right, 1.5)


def test_reflection_around_mode(replay):
    sampler = build_slice_sampler(_slice("normal", mean=3.0), 8, symmetric=True)
    word = (1 << 4) | 2
    high = sampler.sample(replay([word]))
    low = sampler.sample(replay([word | 0b1000]))
    assert high + low == pytest.approx(6.0)
    assert low < 3.0 < high


def test_deterministic():
    sampler = make_sampler(DistributionSpec.create("normal"), 64)
    first = [sampler.sample(make_source("pcg64", 7)) for _ in range(3)]
    src = make_source("pcg64", 7)
    values = [sampler.sample(src) for _ in range(100)]
    assert first == [values[0]] * 3
    assert all(math.isfinite(i) for i in values)


class CountingSource(BitSource):
    def __init__(self, src):
        self.src = src
        self.bits = src.bits
        self.calls = 0

    def next_bits(self):
        self.calls += 1
        return self.src.next_bits()


def test_fast_path_share(monkeypatch):
    spec = DistributionSpec.create("normal")
    sampler = make_sampler(spec, 256)
    density = distribution_for(spec).pdf
    calls = []

    def pdf(x):
        calls.append(x)
        return density(x)

    monkeypatch.setattr(sampler, "pdf", pdf)
    src = CountingSource(make_source("mt19937_64", 11))
    draws = 100_000
    single_word = 0
    for _ in range(draws):
        before = src.calls
        sampler.sample(src)
        single_word += src.calls - before == 1

    # every path except the fast accept reads a second word
    assert len(calls) / draws < 0.1
    assert single_word / draws >= 0.98


def _lag_one(values):
    values = np.asarray(values)
    return float(np.corrcoef(values[:-1], values[1:])[0, 1])


def _assert_uncorrelated(n, seed):
    sampler = make_sampler(DistributionSpec.create("normal"), 256)
    src = make_source("mt19937_64", seed)
    values = [sampler.sample(src) for _ in range(n)]
    bound = 4.0 / math.sqrt(n)
    assert abs(_lag_one(values)) < bound
    assert abs(_lag_one(np.abs(values))) < bound


def test_consecutive_outputs_uncorrelated():
    _assert_uncorrelated(50_000, 12)


@pytest.mark.slow
def test_consecutive_outputs_uncorrelated_full_scale():
    _assert_uncorrelated(10_000_000, 13)


@pytest.fixture(scope="module")
def normal_tails():
    spec = DistributionSpec.create("normal")
    return make_sampler(spec, 256, "fixed").tail, make_sampler(spec, 256, "canonical").tail


def test_fixed_uniform_truncates_tail(replay, normal_tails):
    fixed, canonical = normal_tails
    s = fixed.ctx.s
    cutoff = math.sqrt(s * s + 128.0 * math.log(2.0))
    assert fixed.mapping(2.0 ** -64) == pytest.approx(cutoff, rel=1e-9)

    # the smallest nonzero word gives the furthest reachable value
    assert fixed.propose(replay([1, 0])) == pytest.approx(cutoff, rel=1e-9)
    for word in (2, 3, 1 << 20, 1 << 40, ALL_ONES):
        assert fixed.mapping(fixed_real(replay([word]))) < cutoff

    # twelve zero low bits, one zero word, then twenty trailing zeros: x = m * 2**-97
    value = canonical.propose(replay([1 << 12, 0, 1 << 20, 1 << 11]))
    x = math.ldexp(1.0 + 2.0 ** -52, -97)
    assert value == pytest.approx(math.sqrt(s * s - 2.0 * math.log(x)), rel=1e-9)
    assert value > cutoff
