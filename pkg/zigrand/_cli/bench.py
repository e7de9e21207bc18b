#!/usr/bin/python3

import csv
import sys
from typing import Any, List

from docopt import docopt

from zigrand._cli._options import (
    DEFAULT_REGIONS,
    FAMILY_OPTIONS,
    SOURCE_OPTIONS,
    families_from_args,
    int_list_option,
    int_option,
    seed_from_args,
    spec_from_args,
)
from zigrand._config import CONFIG, _update_argv_from_docopt
from zigrand.bench import BASELINE_FAMILIES, CSV_HEADER, METHODS, BenchResult, run_bench
from zigrand.exceptions import InvalidCommand
from zigrand.utils import notify

BENCH = CONFIG.settings["bench"]

__doc__ = f"""Usage: zigrand bench [options]

{FAMILY_OPTIONS}

{SOURCE_OPTIONS}

Bench Options:
  --method <name>          zigg, baseline or both [default: zigg]
  --regions -n <list>      Comma separated region counts [default: {DEFAULT_REGIONS}]
  --variates <n>           Variates per repetition [default: {BENCH['n_variates']}]
  --reps <n>               Number of repetitions [default: {BENCH['reps']}]
  --quiet -q               Hide the progress bars
  --help -h                Display this message

Times the samplers of one or more families, given as a comma separated --family
value. Parameter flags apply to the families that take them. The ziggurat
sampler gets one CSV row per family and region count, a baseline one row per family.
Rows hold the mean and standard error of the time per variate in nanoseconds and
the time to draw one raw word from the bit source.
Baselines exist for {', '.join(i.value for i in BASELINE_FAMILIES)}."""


def _methods(name: str) -> List[str]:
    if name == "both":
        return list(METHODS)
    if name not in METHODS:
        raise InvalidCommand(f"--method must be one of {', '.join(METHODS)} or both, got '{name}'")
    return [name]


def _write(writer: Any, result: BenchResult) -> None:
    writer.writerow(result.csv_row())
    sys.stdout.flush()


def main() -> int:
    args = docopt(__doc__)
    _update_argv_from_docopt(args)

    specs = [spec_from_args(args, family, strict=False) for family in families_from_args(args)]
    methods = _methods(args["--method"])
    regions = int_list_option(args, "--regions")
    n = int_option(args, "--variates")
    reps = int_option(args, "--reps")
    seed = seed_from_args(args)
    extra = (args["--source"], args["--quiet"])

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for spec in specs:
        spec_methods = methods
        if len(methods) > 1 and spec.family not in BASELINE_FAMILIES:
            notify("WARNING", f"No baseline for {spec.family.value}, skipped")
            spec_methods = ["zigg"]
        if "zigg" in spec_methods:
            for n_regions in regions:
                _write(writer, run_bench(spec, "zigg", n, reps, seed, n_regions, *extra))
        # baselines have no regions, one row per family
        if "baseline" in spec_methods:
            _write(writer, run_bench(spec, "baseline", n, reps, seed, None, *extra))
    return 0
