#!/usr/bin/python3

"""
isort:skip_file
"""
from zigrand._config import CONFIG as _CONFIG, __version__
from zigrand.distributions import DistributionSpec, Family, make_sampler
from zigrand.rng import CanonicalFloatGen, canonical_real, fixed_real, make_source
from zigrand.validation import meta_test, run_meta_test
from zigrand.bench import run_bench

config = _CONFIG.settings

__all__ = [
    "CanonicalFloatGen",
    "DistributionSpec",
    "Family",
    "__version__",
    "canonical_real",
    "config",  # config is the locked settings dict of the Config singleton
    "fixed_real",
    "make_sampler",
    "make_source",
    "meta_test",
    "run_bench",
    "run_meta_test",
]
