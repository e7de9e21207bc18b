#!/usr/bin/python3

from typing import Iterable, List

import pytest

from zigrand._config import CONFIG, _modify_hypothesis_settings
from zigrand.distributions import DistributionSpec
from zigrand.rng import BitSource, make_source

SEED = 20231017


def pytest_addoption(parser):
    parser.addoption(
        "--slow",
        action="store_true",
        default=False,
        help="Run the statistical tests at full sample sizes.",
    )


def pytest_configure(config):
    _modify_hypothesis_settings(CONFIG.settings["hypothesis"], "zigrand-tests")


# statistical tests marked slow only run with --slow
def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="statistical test, run with --slow")
    for item in [i for i in items if "slow" in i.keywords]:
        item.add_marker(skip)


class ReplaySource(BitSource):

    """Emits a fixed list of words, then raises so a test never reads past it."""

    def __init__(self, words: Iterable[int], bits: int = 64) -> None:
        self.words: List[int] = list(words)
        self.bits = bits
        self.calls = 0

    def next_bits(self) -> int:
        if self.calls >= len(self.words):
            raise AssertionError(f"ReplaySource exhausted after {self.calls} words")
        word = self.words[self.calls]
        self.calls += 1
        return word


@pytest.fixture
def replay():
    return ReplaySource


@pytest.fixture
def source():
    return make_source("mt19937_64", SEED)


@pytest.fixture
def other_source():
    return make_source("pcg64", SEED + 1)


@pytest.fixture
def normal():
    return DistributionSpec.create("normal")


# configuration fixtures
# changes to config or argv are reverted during teardown


@pytest.fixture
def config():
    argv = dict(CONFIG.argv)
    settings = CONFIG.settings._copy()

    yield CONFIG

    CONFIG.argv.clear()
    CONFIG.argv.update(argv)

    CONFIG.settings._unlock()
    CONFIG.settings.clear()
    CONFIG.settings.update(settings)
    CONFIG.settings._lock()


@pytest.fixture
def argv():
    initial = {}
    initial.update(CONFIG.argv)
    yield CONFIG.argv
    CONFIG.argv.clear()
    CONFIG.argv.update(initial)
