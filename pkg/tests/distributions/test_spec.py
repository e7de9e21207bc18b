#!/usr/bin/python3

import math

import pytest

from zigrand.distributions import PARAMETERS, DistributionSpec, Family
from zigrand.exceptions import InvalidParameter, UnsupportedFamily


@pytest.mark.parametrize("name", ["chi_squared", "Chi-Squared", " CHI_SQUARED "])
def test_from_name(name):
    assert Family.from_name(name) is Family.CHI_SQUARED


def test_from_name_unknown():
    with pytest.raises(UnsupportedFamily, match="Valid families: normal, cauchy"):
        Family.from_name("uniform")


def test_every_family_has_parameters():
    assert set(PARAMETERS) == set(Family)


def test_defaults():
    spec = DistributionSpec.create("normal")
    assert spec.family is Family.NORMAL
    assert spec.params == (("mean", 0.0), ("stddev", 1.0))
    assert DistributionSpec.create("fisher_f").as_dict() == {"dof1": 1.0, "dof2": 1.0}


def test_parameter_order():
    spec = DistributionSpec.create(Family.GAMMA, scale=2.0, shape=3)
    assert spec.params == (("shape", 3.0), ("scale", 2.0))
    assert type(spec["shape"]) is float


def test_equality():
    assert DistributionSpec.create("normal") == DistributionSpec.create(Family.NORMAL, mean=0)
    assert hash(DistributionSpec.create("cauchy")) == hash(DistributionSpec.create("cauchy"))
    assert DistributionSpec.create("normal") != DistributionSpec.create("normal", mean=1)


def test_required():
    with pytest.raises(InvalidParameter, match="requires a value for 'dof'"):
        DistributionSpec.create("student_t")
    with pytest.raises(InvalidParameter, match="requires"):
        DistributionSpec.create("chi_squared")


def test_unknown_parameter():
    with pytest.raises(InvalidParameter, match="does not take rate"):
        DistributionSpec.create("normal", rate=1.0)


@pytest.mark.parametrize(
    "family,params",
    [
        ("normal", {"stddev": 0.0}),
        ("normal", {"stddev": -1.0}),
        ("gamma", {"shape": 0.0}),
        ("weibull", {"scale": -2.0}),
        ("exponential", {"rate": math.inf}),
        ("normal", {"mean": math.nan}),
        ("fisher_f", {"dof2": 0.0}),
    ],
)
def test_invalid_values(family, params):
    with pytest.raises(InvalidParameter):
        DistributionSpec.create(family, **params)


def test_locations_may_be_negative():
    assert DistributionSpec.create("normal", mean=-3.0)["mean"] == -3.0
    assert DistributionSpec.create("cauchy", mode=-1.0)["mode"] == -1.0
    assert DistributionSpec.create("lognormal", normal_mean=-2.0)["normal_mean"] == -2.0


def test_getitem():
    spec = DistributionSpec.create("weibull", shape=1.5)
    assert spec["shape"] == 1.5
    assert spec["scale"] == 1.0
    with pytest.raises(KeyError):
        spec["rate"]


def test_str():
    assert str(DistributionSpec.create("normal")) == "normal(mean=0, stddev=1)"
    assert str(DistributionSpec.create("student_t", dof=2.5)) == "student_t(dof=2.5)"
