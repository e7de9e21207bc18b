#!/usr/bin/python3

import numpy as np
import pytest


def _values(out):
    return [float(i) for i in out.splitlines()]


def test_csv(cli):
    code, out, err = cli("sample -f normal -c 5 -s 42")
    assert code == 0
    assert err == ""
    values = _values(out)
    assert len(values) == 5
    assert out.endswith("\n")
    assert "," not in out


def test_seed_determinism(cli):
    first = cli("sample -f cauchy -c 20 -s 42")[1]
    second = cli("sample -f cauchy -c 20 -s 42")[1]
    third = cli("sample -f cauchy -c 20 -s 43")[1]
    assert first == second
    assert first != third


def test_source_choice(cli):
    first = cli("sample -f normal -c 20 -s 42 --source pcg64")[1]
    second = cli("sample -f normal -c 20 -s 42 --source mt19937_64")[1]
    assert first != second
    code, _, err = cli("sample -f normal --source lcg")
    assert code == 2


def test_full_precision(cli):
    for line in cli("sample -f exponential -c 50 -s 1")[1].splitlines():
        assert f"{float(line):.17g}" == line


def test_parameters(cli):
    values = _values(cli("sample -f lognormal --normal-mean 2 --normal-stddev 0.5 -c 50 -s 3")[1])
    assert min(values) > 0
    values = _values(cli("sample -f normal --mean 100 --stddev 0.01 -c 50 -s 3")[1])
    assert all(99 < i < 101 for i in values)


def test_binary(cli, tmp_path):
    path = tmp_path.joinpath("values.bin")
    code, out, _ = cli(f"sample -f gamma --shape 0.5 -c 100 -s 9 --format binary -o {path}")
    assert code == 0
    assert out == ""
    data = path.read_bytes()
    assert len(data) == 8 * 100
    values = np.frombuffer(data, dtype="<f8")
    assert values.tolist() == _values(cli("sample -f gamma --shape 0.5 -c 100 -s 9")[1])


def test_csv_file(cli, tmp_path):
    path = tmp_path.joinpath("values.csv")
    assert cli(f"sample -f weibull --shape 2 -c 7 -s 2 -o {path}")[0] == 0
    assert len(path.read_text().splitlines()) == 7


def test_zero_count(cli):
    assert cli("sample -f normal -c 0") == (0, "", "")


def test_tail_options(cli):
    default = cli("sample -f normal -c 200 -s 5")[1]
    assert cli("sample -f normal -c 200 -s 5 --tail logarithmic")[0] == 0
    assert cli("sample -f normal -c 200 -s 5 --tail-uniform fixed")[0] == 0
    assert default
    code, _, err = cli("sample -f normal --tail rational")
    assert code == 2
    assert "no 'rational' tail" in err


@pytest.mark.parametrize(
    "argv,message",
    [
        ("sample -c 5", "--family is required"),
        ("sample -f uniform", "Unknown distribution 'uniform'"),
        ("sample -f normal,cauchy", "exactly one family"),
        ("sample -f normal --mean abc", "--mean expects a number"),
        ("sample -f normal --rate 2", "does not take rate"),
        ("sample -f student_t", "requires a value for 'dof'"),
        ("sample -f normal --format xml", "--format must be one of csv, binary"),
        ("sample -f normal --count=-1", "--count must be at least 0"),
        ("sample -f normal -n 4", "at least 8 regions"),
        ("sample -f normal -s 18446744073709551616", "64 bits"),
        ("sample -f normal --tail-uniform gaussian", "Unknown tail uniform"),
    ],
)
def test_errors(cli, argv, message):
    code, out, err = cli(argv)
    assert code == 2
    assert out == ""
    assert message in err
