#!/usr/bin/python3

from docopt import docopt

from zigrand._cli._options import (
    DEFAULT_REGIONS,
    FAMILY_OPTIONS,
    FORMATS,
    SOURCE_OPTIONS,
    TAIL_OPTIONS,
    choice,
    int_option,
    seed_from_args,
    spec_from_args,
    write_values,
)
from zigrand._config import _update_argv_from_docopt
from zigrand.distributions import make_sampler
from zigrand.rng import make_source

__doc__ = f"""Usage: zigrand sample [options]

{FAMILY_OPTIONS}

{TAIL_OPTIONS}

{SOURCE_OPTIONS}

Output Options:
  --count -c <n>           Number of variates [default: 10]
  --regions -n <n>         Number of ziggurat regions [default: {DEFAULT_REGIONS}]
  --format <fmt>           csv, or binary for little-endian float64 [default: csv]
  --output -o <path>       Write to a file instead of stdout
  --help -h                Display this message

Draws variates with a ziggurat sampler. CSV output holds one value per line,
printed with 17 significant digits. Equal seeds give identical output."""


def main() -> int:
    args = docopt(__doc__)
    _update_argv_from_docopt(args)

    spec = spec_from_args(args)
    count = int_option(args, "--count", minimum=0)
    fmt = choice(args, "--format", FORMATS)
    seed = seed_from_args(args)

    sampler = make_sampler(
        spec, int_option(args, "--regions"), args["--tail-uniform"], args["--tail"]
    )
    src = make_source(args["--source"], seed)
    write_values([sampler.sample(src) for _ in range(count)], fmt, args["--output"])
    return 0
