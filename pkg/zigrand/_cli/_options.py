#!/usr/bin/python3

import sys
from contextlib import contextmanager
from pathlib import Path
from typing import IO, Dict, Iterator, List, Optional, Sequence

import numpy as np

from zigrand._config import CONFIG
from zigrand.distributions import PARAMETERS, DistributionSpec, Family
from zigrand.exceptions import InvalidCommand
from zigrand.rng import SOURCE_NAMES

FORMATS = ("csv", "binary")

DEFAULT_REGIONS = CONFIG.settings["setup"]["n_regions"]

PARAMETER_NAMES = sorted({name for params in PARAMETERS.values() for name, _ in params})

FAMILY_OPTIONS = """Distribution Options:
  --family -f <name>       Distribution family: normal, cauchy, exponential, gamma,
                           chi_squared, weibull, lognormal, student_t or fisher_f
  --mean <value>           Normal mean
  --stddev <value>         Normal standard deviation
  --mode <value>           Cauchy mode
  --scale <value>          Cauchy, gamma or Weibull scale
  --rate <value>           Exponential rate
  --shape <value>          Gamma or Weibull shape
  --dof <value>            Degrees of freedom of chi_squared or student_t
  --dof1 <value>           Numerator degrees of freedom of fisher_f
  --dof2 <value>           Denominator degrees of freedom of fisher_f
  --normal-mean <value>    Mean of the logarithm of a lognormal variate
  --normal-stddev <value>  Standard deviation of the logarithm of a lognormal variate"""

TAIL_OPTIONS = """Tail Options:
  --tail <name>            Tail strategy, for families that offer more than one
  --tail-uniform <name>    Uniform feeding tail and peak mappings, canonical or
                           fixed [default: canonical]"""

SOURCE_OPTIONS = f"""Source Options:
  --source <name>          Bit source: {', '.join(SOURCE_NAMES)}
                           (default {CONFIG.settings['rng']['source']})
  --seed -s <seed>         Seed, a 64-bit unsigned integer. Omit for fresh entropy"""


def _flag(name: str) -> str:
    return f"--{name.replace('_', '-')}"


def _number(flag: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise InvalidCommand(f"{flag} expects a number, got '{value}'") from None


def families_from_args(args: Dict) -> List[Family]:
    """Families named by a comma separated `--family` value."""
    if not args["--family"]:
        raise InvalidCommand("--family is required")
    return [Family.from_name(i) for i in args["--family"].split(",") if i.strip()]


def spec_from_args(
    args: Dict, family: Optional[Family] = None, strict: bool = True
) -> DistributionSpec:
    """
    Build a distribution from the parameter flags.

    With `strict` unset, flags that `family` does not take are ignored instead of
    raising, so one set of flags can describe a grid of families.
    """
    if family is None:
        families = families_from_args(args)
        if len(families) != 1:
            raise InvalidCommand("Give exactly one family")
        family = families[0]

    accepted = {name for name, _ in PARAMETERS[family]}
    params = {}
    for name in PARAMETER_NAMES:
        value = args.get(_flag(name))
        if value is None or (not strict and name not in accepted):
            continue
        params[name] = _number(_flag(name), value)
    return DistributionSpec.create(family, **params)


def int_option(args: Dict, flag: str, minimum: int = 1) -> Optional[int]:
    value = args.get(flag)
    if value is None:
        return None
    try:
        number = int(value)
    except ValueError:
        raise InvalidCommand(f"{flag} expects an integer, got '{value}'") from None
    if number < minimum:
        raise InvalidCommand(f"{flag} must be at least {minimum}, got {number}")
    return number


def int_list_option(args: Dict, flag: str) -> List[int]:
    """Comma separated positive integers."""
    values = []
    for item in (args.get(flag) or "").split(","):
        if item.strip():
            values.append(int_option({flag: item.strip()}, flag))
    if not values:
        raise InvalidCommand(f"{flag} needs at least one value")
    return values


def seed_from_args(args: Dict) -> Optional[int]:
    seed = int_option(args, "--seed", minimum=0)
    if seed is not None and seed >= 2 ** 64:
        raise InvalidCommand(f"--seed must fit in 64 bits, got {seed}")
    return seed


def choice(args: Dict, flag: str, choices: Sequence[str]) -> str:
    value = args[flag]
    if value not in choices:
        raise InvalidCommand(f"{flag} must be one of {', '.join(choices)}, got '{value}'")
    return value


@contextmanager
def output_stream(path: Optional[str], binary: bool = False) -> Iterator[IO]:
    """The file at `path`, or stdout when no path is given."""
    if path is None:
        stream = sys.stdout.buffer if binary else sys.stdout
        yield stream
        stream.flush()
    elif binary:
        with Path(path).open("wb") as fp:
            yield fp
    else:
        with Path(path).open("w", newline="") as fp:
            yield fp


def write_values(values: Sequence[float], fmt: str, path: Optional[str]) -> None:
    """Write floats as one CSV column with 17 significant digits, or as raw float64."""
    if fmt == "binary":
        with output_stream(path, binary=True) as fp:
            fp.write(np.asarray(values, dtype="<f8").tobytes())
        return
    with output_stream(path) as fp:
        fp.writelines(f"{value:.17g}\n" for value in values)
