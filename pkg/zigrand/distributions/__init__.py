#!/usr/bin/python3

import logging
import warnings
from typing import Optional

from zigrand._config import CONFIG
from zigrand.exceptions import ZigguratEfficiencyWarning
from zigrand.ziggurat import AsymmetricSampler, Sampler, build_slice_sampler, tail_uniform_for

from .families import (  # noqa 401
    DISTRIBUTIONS,
    Cauchy,
    ChiSquared,
    Distribution,
    Exponential,
    FisherF,
    Gamma,
    LogNormal,
    Normal,
    StudentT,
    Weibull,
    distribution_for,
)
from .spec import PARAMETERS, DistributionSpec, Family  # noqa 401

logger = logging.getLogger(__name__)

# Fisher's f with a tiny dof needs many regions to keep the tail efficient
FISHER_SMALL_DOF = 0.2
FISHER_MIN_REGIONS = 1024


def make_sampler(
    spec: DistributionSpec,
    n: Optional[int] = None,
    tail_uniform: str = "canonical",
    tail: Optional[str] = None,
) -> Sampler:
    """
    Build a ziggurat sampler for a distribution.

    Symmetric families get a single reflected slice, families whose mode lies at the
    start of the support a single decreasing slice, everything else a composite of
    two slices chosen by their probability.

    Arguments
    ---------
    spec : DistributionSpec
        Family and parameters.
    n : int, optional
        Number of regions per slice. Defaults to the `setup.n_regions` setting.
    tail_uniform : str
        Uniform generator for tail and peak mappings, "canonical" or "fixed".
    tail : str, optional
        Name of the tail strategy, if the family supports more than one.

    Returns
    -------
    ZigguratSampler | AsymmetricSampler
    """
    n = n or CONFIG.settings["setup"]["n_regions"]
    dist = distribution_for(spec)
    if spec.family is Family.FISHER_F and n < FISHER_MIN_REGIONS:
        if min(spec["dof1"], spec["dof2"]) <= FISHER_SMALL_DOF:
            warnings.warn(
                f"{spec} with {n} regions has a poor tail efficiency, "
                f"use {FISHER_MIN_REGIONS} regions or more",
                ZigguratEfficiencyWarning,
            )

    left, right = dist.slices(tail)
    right_sampler = build_slice_sampler(right, n, dist.symmetric, tail_uniform)
    if left is None:
        return right_sampler
    left_sampler = build_slice_sampler(left, n, False, tail_uniform)
    ratio = right.mass / (left.mass + right.mass)
    logger.debug("%s split at mode %r, right mass ratio %r", spec, dist.mode, ratio)
    return AsymmetricSampler(left_sampler, right_sampler, ratio, tail_uniform_for("canonical"))


def pdf(spec: DistributionSpec, x: float) -> float:
    return distribution_for(spec).pdf(x)


def log_pdf(spec: DistributionSpec, x: float) -> float:
    return distribution_for(spec).log_pdf(x)


def cdf(spec: DistributionSpec, x: float) -> float:
    return distribution_for(spec).cdf(x)


def ccdf(spec: DistributionSpec, x: float) -> float:
    return distribution_for(spec).ccdf(x)


def mode_of(spec: DistributionSpec) -> float:
    return distribution_for(spec).mode
