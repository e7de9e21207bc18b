#!/usr/bin/python3

from .canonical import CanonicalFloatGen, canonical_real, fixed_real, trailing_zeros  # noqa 401
from .sources import (  # noqa 401
    SOURCE_NAMES,
    BitSource,
    BufferedBitSource,
    MT19937_64,
    NumPyBitSource,
    make_source,
    spawn_sources,
)
