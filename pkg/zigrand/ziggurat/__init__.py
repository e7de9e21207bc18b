#!/usr/bin/python3

from .peak import PeakSpec, peak_efficiency_estimate, peak_spec_for  # noqa 401
from .sampler import (  # noqa 401
    AsymmetricSampler,
    Sampler,
    ZigguratSampler,
    build_slice_sampler,
    tail_uniform_for,
)
from .tables import (  # noqa 401
    Direction,
    MonotoneSlice,
    ZigguratTable,
    area,
    bisect,
    build_table,
    find_interval,
)
