#!/usr/bin/python3

import json
import math

from zigrand.distributions import DistributionSpec, make_sampler
from zigrand.ziggurat import ZigguratTable


def test_json_round_trip(cli):
    code, out, _ = cli("table -f normal -n 64 --format json")
    assert code == 0
    data = json.loads(out)
    assert data["distribution"] == "normal"
    assert data["params"] == {"mean": 0.0, "stddev": 1.0}
    assert len(data["slices"]) == 1
    entry = data["slices"][0]
    assert entry["side"] == "right"
    assert entry["symmetric"] is True
    assert entry["tail"]["strategy"] == "ipdf"
    assert 0 < entry["tail"]["efficiency"] <= 1
    sampler = make_sampler(DistributionSpec.create("normal"), 64)
    assert ZigguratTable.from_dict(entry["table"]) == sampler.table


def test_json_two_slices(cli):
    data = json.loads(cli("table -f gamma --shape 2.5 -n 32 --format json")[1])
    assert [i["side"] for i in data["slices"]] == ["left", "right"]
    assert 0 < data["right_mass_ratio"] < 1
    assert data["slices"][0]["table"]["bounded_support"] is True
    assert "tail" not in data["slices"][0]


def test_json_unbounded_density(cli):
    data = json.loads(cli("table -f chi_squared --dof 1 -n 32 --format json")[1])
    entry = data["slices"][0]
    assert entry["table"]["unbounded_density"] is True
    assert entry["table"]["y"][-1] == math.inf
    assert entry["peak"]["q"] == 0.5
    assert entry["peak"]["beta"] == 0.5
    table = ZigguratTable.from_dict(entry["table"])
    assert table.accept_bound[-1] == -math.inf


def test_text(cli):
    code, out, _ = cli("table -f normal -n 16")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "normal(mean=0, stddev=1)"
    assert "right slice" in lines[1]
    assert any(i.endswith("strategy: ipdf") for i in lines)
    assert any(i.endswith("n: 16") for i in lines)
    assert any(i.endswith("16: 0") for i in lines)
    assert any(i.endswith("symmetric: true") for i in lines)


def test_tail_choice(cli):
    data = json.loads(cli("table -f cauchy -n 16 --format json --tail trigonometric")[1])
    assert data["slices"][0]["tail"]["strategy"] == "trigonometric"
    assert math.isclose(data["slices"][0]["tail"]["efficiency"], 1.0)


def test_output_file(cli, tmp_path):
    path = tmp_path.joinpath("table.json")
    code, out, _ = cli(f"table -f exponential -n 16 --format json -o {path}")
    assert code == 0
    assert out == ""
    assert json.loads(path.read_text())["slices"][0]["table"]["n"] == 16


def test_invalid_format(cli):
    code, _, err = cli("table -f normal --format yaml")
    assert code == 2
    assert "text, json" in err
