#!/usr/bin/python3

from abc import ABC, abstractmethod
from typing import Callable, Dict, Iterator, List, Optional, Union

import numpy as np

from zigrand._config import CONFIG
from zigrand.exceptions import UnsupportedFamily

SeedLike = Union[None, int, np.random.SeedSequence]

MASK64 = 0xFFFFFFFFFFFFFFFF


class BitSource(ABC):

    """
    Uniform random bit generator.

    Each call to `next_bits` returns one word of `bits` independent uniform bits as
    a non-negative int. A source is owned by one execution context at a time.
    """

    bits: int = 64

    @abstractmethod
    def next_bits(self) -> int:
        raise NotImplementedError

    def __iter__(self) -> Iterator[int]:
        while True:
            yield self.next_bits()


class BufferedBitSource(BitSource):

    """
    Base class for sources that produce words in blocks.

    Subclasses implement `_refill`, returning the next block as a list of ints.
    """

    def __init__(self) -> None:
        self._pop: Callable[[], int] = iter(()).__next__

    @abstractmethod
    def _refill(self) -> List[int]:
        raise NotImplementedError

    def next_bits(self) -> int:
        try:
            return self._pop()
        except StopIteration:
            self._pop = iter(self._refill()).__next__
            return self._pop()


class MT19937_64(BufferedBitSource):

    """
    64-bit Mersenne Twister, with the twist and tempering done on numpy arrays.

    Integer seeds use the reference `init_genrand64` routine, so the stream matches
    `std::mt19937_64`. Seed sequences fill the 312-word state directly.
    """

    n = 312
    m = 156
    a = np.uint64(0xB5026F5AA96619E9)
    upper_mask = np.uint64(0xFFFFFFFF80000000)
    lower_mask = np.uint64(0x7FFFFFFF)
    f = 6364136223846793005

    def __init__(self, seed: SeedLike = 5489) -> None:
        super().__init__()
        if isinstance(seed, np.random.SeedSequence):
            state = seed.generate_state(self.n, np.uint64)
            if not state.any():
                state[0] = np.uint64(1 << 63)
            self._mt = state
        else:
            self._mt = self._init_genrand(5489 if seed is None else seed)

    @classmethod
    def _init_genrand(cls, seed: int) -> np.ndarray:
        state = [seed & MASK64]
        for i in range(1, cls.n):
            prev = state[-1]
            state.append((cls.f * (prev ^ (prev >> 62)) + i) & MASK64)
        return np.array(state, dtype=np.uint64)

    def _mix(self, upper: np.ndarray, lower: np.ndarray) -> np.ndarray:
        x = (upper & self.upper_mask) | (lower & self.lower_mask)
        return (x >> np.uint64(1)) ^ np.where(x & np.uint64(1), self.a, np.uint64(0))

    def _twist(self) -> None:
        mt, n, m = self._mt, self.n, self.m
        new = np.empty_like(mt)
        new[: n - m] = mt[m:] ^ self._mix(mt[: n - m], mt[1 : n - m + 1])
        new[n - m : n - 1] = new[: m - 1] ^ self._mix(mt[n - m : n - 1], mt[n - m + 1 :])
        new[n - 1] = new[m - 1] ^ self._mix(mt[n - 1 :], new[:1])[0]
        self._mt = new

    def _refill(self) -> List[int]:
        self._twist()
        y = self._mt.copy()
        y ^= (y >> np.uint64(29)) & np.uint64(0x5555555555555555)
        y ^= (y << np.uint64(17)) & np.uint64(0x71D67FFFEDA60000)
        y ^= (y << np.uint64(37)) & np.uint64(0xFFF7EEE000000000)
        y ^= y >> np.uint64(43)
        return y.tolist()


class NumPyBitSource(BufferedBitSource):

    """Wraps a 64-bit numpy BitGenerator, reading raw words in blocks."""

    def __init__(self, bit_generator: np.random.BitGenerator, buffer_size: int = None) -> None:
        super().__init__()
        self._bit_generator = bit_generator
        self._buffer_size = buffer_size or CONFIG.settings["rng"]["buffer_size"]

    def _refill(self) -> List[int]:
        return self._bit_generator.random_raw(self._buffer_size).tolist()


_NUMPY_GENERATORS: Dict[str, Callable] = {
    "pcg64": np.random.PCG64,
    "pcg64dxsm": np.random.PCG64DXSM,
    "sfc64": np.random.SFC64,
    "philox": np.random.Philox,
}

SOURCE_NAMES = ("mt19937_64",) + tuple(_NUMPY_GENERATORS)


def _seed_sequence(seed: SeedLike) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


def make_source(name: Optional[str] = None, seed: SeedLike = None) -> BitSource:
    """
    Build a bit source by name.

    The seed is always expanded through `numpy.random.SeedSequence`, so the same
    integer gives the same stream on every platform.

    Arguments
    ---------
    name : str, optional
        One of `SOURCE_NAMES`. Defaults to the `rng.source` config setting.
    seed : int | SeedSequence, optional
        Entropy for the generator. `None` draws fresh OS entropy.

    Returns
    -------
    BitSource
        A 64-bit source.
    """
    name = (name or CONFIG.settings["rng"]["source"]).lower()
    sequence = _seed_sequence(seed)
    if name == "mt19937_64":
        return MT19937_64(sequence)
    try:
        return NumPyBitSource(_NUMPY_GENERATORS[name](sequence))
    except KeyError:
        raise UnsupportedFamily(
            f"Unknown bit source '{name}'. Valid sources: {', '.join(SOURCE_NAMES)}"
        ) from None


def spawn_sources(name: Optional[str], seed: SeedLike, count: int) -> List[BitSource]:
    """Returns `count` statistically independent sources derived from one seed."""
    children = _seed_sequence(seed).spawn(count)
    return [make_source(name, child) for child in children]
