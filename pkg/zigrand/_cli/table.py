#!/usr/bin/python3

import json
from typing import Any, Dict, List, Tuple

from docopt import docopt

from zigrand._cli._options import (
    DEFAULT_REGIONS,
    FAMILY_OPTIONS,
    TAIL_OPTIONS,
    choice,
    int_option,
    output_stream,
    spec_from_args,
)
from zigrand._config import _update_argv_from_docopt
from zigrand.distributions import DistributionSpec, make_sampler
from zigrand.utils.output import TreeNode, build_tree
from zigrand.ziggurat import AsymmetricSampler, Sampler, ZigguratSampler

__doc__ = f"""Usage: zigrand table [options]

{FAMILY_OPTIONS}

{TAIL_OPTIONS}

Output Options:
  --regions -n <n>         Number of ziggurat regions [default: {DEFAULT_REGIONS}]
  --format <fmt>           text or json [default: text]
  --output -o <path>       Write to a file instead of stdout
  --help -h                Display this message

Builds the sampler for a distribution and prints its equal-area tables: the
number of regions, the x and y coordinates, the support and density flags, and
the tail and peak strategies with their predicted efficiencies. JSON output can
be loaded back with ZigguratTable.from_dict."""

TABLE_FORMATS = ("text", "json")


def _slices(sampler: Sampler) -> List[Tuple[str, ZigguratSampler]]:
    if isinstance(sampler, AsymmetricSampler):
        return [("left", sampler.left), ("right", sampler.right)]
    return [("right", sampler)]


def table_data(spec: DistributionSpec, sampler: Sampler) -> Dict[str, Any]:
    data: Dict[str, Any] = {"distribution": spec.family.value, "params": spec.as_dict()}
    if isinstance(sampler, AsymmetricSampler):
        data["right_mass_ratio"] = sampler.right_mass_ratio
    data["slices"] = []
    for side, slice_sampler in _slices(sampler):
        info = slice_sampler.describe()
        entry = {"side": side, "symmetric": slice_sampler.symmetric}
        for key in ("tail", "peak"):
            if key in info:
                entry[key] = info[key]
        entry["table"] = slice_sampler.table.to_dict()
        data["slices"].append(entry)
    return data


def _format(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _node(label: str, value: Any) -> TreeNode:
    if isinstance(value, dict):
        return [label] + [_node(k, v) for k, v in value.items()]
    if isinstance(value, list):
        return [label] + [f"{i}: {_format(v)}" for i, v in enumerate(value)]
    return f"{label}: {_format(value)}"


def render_text(spec: DistributionSpec, data: Dict[str, Any]) -> str:
    children: List[TreeNode] = []
    if "right_mass_ratio" in data:
        children.append(_node("right_mass_ratio", data["right_mass_ratio"]))
    for entry in data["slices"]:
        fields = {k: v for k, v in entry.items() if k not in ("side", "table")}
        fields.update(entry["table"])
        children.append(_node(f"{entry['side']} slice", fields))
    return build_tree([[str(spec)] + children])


def main() -> int:
    args = docopt(__doc__)
    _update_argv_from_docopt(args)

    spec = spec_from_args(args)
    fmt = choice(args, "--format", TABLE_FORMATS)
    sampler = make_sampler(
        spec, int_option(args, "--regions"), args["--tail-uniform"], args["--tail"]
    )
    data = table_data(spec, sampler)
    text = json.dumps(data, indent=2) + "\n" if fmt == "json" else render_text(spec, data)
    with output_stream(args["--output"]) as fp:
        fp.write(text)
    return 0
