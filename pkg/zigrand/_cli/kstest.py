#!/usr/bin/python3

import csv

from docopt import docopt

from zigrand._cli._options import (
    DEFAULT_REGIONS,
    FAMILY_OPTIONS,
    SOURCE_OPTIONS,
    TAIL_OPTIONS,
    int_option,
    output_stream,
    seed_from_args,
    spec_from_args,
)
from zigrand._config import CONFIG, _update_argv_from_docopt
from zigrand.distributions import DistributionSpec, make_sampler
from zigrand.utils import notify
from zigrand.utils.output import build_tree
from zigrand.validation import MetaReport, run_meta_test

REJECT_BELOW = CONFIG.settings["validation"]["reject_below"]

__doc__ = f"""Usage: zigrand kstest [options]

{FAMILY_OPTIONS}

{TAIL_OPTIONS}

{SOURCE_OPTIONS}

Test Options:
  --replicates -m <m>      Number of independent samples [default: 64]
  --sample-size <n>        Size of every sample [default: 65536]
  --regions -n <n>         Number of ziggurat regions [default: {DEFAULT_REGIONS}]
  --output -o <path>       Write replicate_index, d_stat, p_value rows as CSV
  --quiet -q               Hide the progress bar
  --help -h                Display this message

Draws m samples of size n, computes the Kolmogorov-Smirnov p-value of each one
and tests the p-values for uniformity. The sampler is rejected, with exit code 1,
when the uniformity p-value stays below {REJECT_BELOW} after the retests."""


def render_report(spec: DistributionSpec, report: MetaReport) -> str:
    return build_tree(
        [
            [
                f"{spec} meta-test",
                f"replicates: {report.m}",
                f"sample_size: {report.n}",
                f"retests: {report.retests}",
                f"uniformity_p: {report.uniformity_p:.17g}",
                f"result: {'passed' if report.passed else 'rejected'}",
            ]
        ]
    )


def write_replicates(report: MetaReport, path: str) -> None:
    with output_stream(path) as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(("replicate_index", "d_stat", "p_value"))
        for i, (d, p) in enumerate(zip(report.d_stats, report.p_values)):
            writer.writerow((i, f"{d:.17g}", f"{p:.17g}"))


def main() -> int:
    args = docopt(__doc__)
    _update_argv_from_docopt(args)

    spec = spec_from_args(args)
    m = int_option(args, "--replicates")
    n = int_option(args, "--sample-size")
    seed = seed_from_args(args)
    sampler = make_sampler(
        spec, int_option(args, "--regions"), args["--tail-uniform"], args["--tail"]
    )

    report = run_meta_test(spec, sampler, m, n, seed, args["--source"], args["--quiet"])
    print(render_report(spec, report), end="")
    if args["--output"]:
        write_replicates(report, args["--output"])

    if report.passed:
        notify("SUCCESS", f"{spec} passed with uniformity p-value {report.uniformity_p:.4g}")
        return 0
    notify("ERROR", f"{spec} rejected with uniformity p-value {report.uniformity_p:.4g}")
    return 1
