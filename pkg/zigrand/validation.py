#!/usr/bin/python3

"""
Kolmogorov-Smirnov tests and the replicate meta-test.

A single KS test on a large sample only detects gross errors. The meta-test draws
`m` independent samples, computes one p-value per sample and tests those p-values
for uniformity, which makes small systematic deviations visible.
"""

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from zigrand._config import CONFIG
from zigrand.distributions import DistributionSpec, distribution_for
from zigrand.exceptions import InvalidParameter, ZigguratEfficiencyWarning
from zigrand.rng import BitSource, spawn_sources
from zigrand.rng.sources import SeedLike
from zigrand.specfun import reg_inc_gamma_upper

logger = logging.getLogger(__name__)

CdfFn = Callable[[float], float]

# below this sample size the asymptotic distribution is a poor approximation
ASYMPTOTIC_MIN_SIZE = 100
SERIES_EPS = 1e-16
SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class KSReport:
    d_stat: float
    p_value: float
    n: int


@dataclass(frozen=True)
class MetaReport:

    """
    Result of a meta-test.

    Attributes
    ----------
    m : int
        Number of replicates.
    n : int
        Size of each replicate sample.
    d_stats : Tuple[float, ...]
        KS statistic of every replicate.
    p_values : Tuple[float, ...]
        KS p-value of every replicate.
    uniformity_p : float
        p-value of the KS test of `p_values` against the uniform distribution.
    retests : int
        Number of retests run before this report.
    """

    m: int
    n: int
    d_stats: Tuple[float, ...]
    p_values: Tuple[float, ...]
    uniformity_p: float
    retests: int = 0

    @property
    def passed(self) -> bool:
        return self.uniformity_p >= CONFIG.settings["validation"]["reject_below"]


@dataclass(frozen=True)
class ChiSquaredReport:
    statistic: float
    dof: int
    p_value: float


def _kolmogorov_sf(lam: float) -> float:
    # survival function of the Kolmogorov distribution
    if lam < 1.1e-16:
        return 1.0
    if lam < 1.0:
        # theta-function form, converges quickly for small arguments
        total = 0.0
        k = 1
        while True:
            term = math.exp(-((2 * k - 1) ** 2) * math.pi ** 2 / (8.0 * lam * lam))
            total += term
            if term <= SERIES_EPS * total or term == 0.0:
                break
            k += 1
        return min(1.0, max(0.0, 1.0 - SQRT_2PI / lam * total))

    x = -2.0 * lam * lam
    sign = 1.0
    total = 0.0
    k = 1
    while True:
        term = math.exp(x * k * k)
        total += sign * term
        if term < SERIES_EPS or term <= SERIES_EPS * total:
            break
        k += 1
        sign = -sign
    return min(1.0, max(0.0, 2.0 * total))


def ks_pvalue_asymptotic(d: float, n: int) -> float:
    """
    Asymptotic p-value of a one-sample KS statistic.

    Returns Q(sqrt(n) * d) with Q(l) = 2 * sum((-1)**(k-1) * exp(-2 k**2 l**2)).
    """
    if n < 1:
        raise InvalidParameter(f"Sample size must be positive, got {n}")
    return _kolmogorov_sf(math.sqrt(n) * d)


def ks_statistic(sample: Iterable[float], cdf: CdfFn) -> float:
    """
    KS statistic D_n of a sample against a continuous distribution function.

    The sample is sorted first, so any ordering is accepted.
    """
    values = np.sort(np.fromiter(sample, dtype=float))
    n = len(values)
    if n == 0:
        raise InvalidParameter("KS statistic of an empty sample")
    fitted = np.fromiter((cdf(x) for x in values.tolist()), dtype=float, count=n)
    upper = np.arange(1, n + 1) / n - fitted
    lower = fitted - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


def ks_test(sample: Sequence[float], cdf: CdfFn) -> KSReport:
    n = len(sample)
    if n < ASYMPTOTIC_MIN_SIZE:
        warnings.warn(
            f"KS p-values for samples of {n} values are only approximate",
            ZigguratEfficiencyWarning,
        )
    d = ks_statistic(sample, cdf)
    return KSReport(d, ks_pvalue_asymptotic(d, n), n)


def ks_two_sample(first: Sequence[float], second: Sequence[float]) -> KSReport:
    """
    Two-sample KS test for the hypothesis that both samples share one distribution.

    The p-value uses the effective size n1 * n2 / (n1 + n2) with Stephens' correction.
    """
    a = np.sort(np.asarray(first, dtype=float))
    b = np.sort(np.asarray(second, dtype=float))
    if not len(a) or not len(b):
        raise InvalidParameter("KS test of an empty sample")
    pooled = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, pooled, side="right") / len(a)
    cdf_b = np.searchsorted(b, pooled, side="right") / len(b)
    d = float(np.abs(cdf_a - cdf_b).max())
    en = math.sqrt(len(a) * len(b) / (len(a) + len(b)))
    return KSReport(d, _kolmogorov_sf((en + 0.12 + 0.11 / en) * d), int(round(en * en)))


def chi_squared_test(observed: Sequence[float], expected: Sequence[float]) -> ChiSquaredReport:
    """Pearson chi-squared test of observed counts against expected counts."""
    obs = np.asarray(observed, dtype=float)
    exp = np.asarray(expected, dtype=float)
    if obs.shape != exp.shape or len(obs) < 2:
        raise InvalidParameter("chi-squared test needs matching count arrays of two or more bins")
    if np.any(exp <= 0):
        raise InvalidParameter("Expected counts must be positive")
    statistic = float(((obs - exp) ** 2 / exp).sum())
    dof = len(obs) - 1
    return ChiSquaredReport(statistic, dof, reg_inc_gamma_upper(0.5 * dof, 0.5 * statistic))


def chi_squared_uniformity(values: Sequence[float], bins: int = 20) -> ChiSquaredReport:
    """Chi-squared test of values in [0, 1] against the uniform distribution."""
    counts, _ = np.histogram(np.asarray(values, dtype=float), bins=bins, range=(0.0, 1.0))
    expected = np.full(bins, len(values) / bins)
    return chi_squared_test(counts, expected)


def _uniform_cdf(x: float) -> float:
    return min(1.0, max(0.0, x))


def _resolve_cdf(target: Union[DistributionSpec, CdfFn]) -> CdfFn:
    if isinstance(target, DistributionSpec):
        return distribution_for(target).cdf
    return target


def _progress_disabled(quiet: bool) -> Optional[bool]:
    # None lets tqdm disable itself when stderr is not a terminal
    if quiet or not CONFIG.settings["console"]["progress"]:
        return True
    return None


def meta_test(
    target: Union[DistributionSpec, CdfFn],
    sampler: object,
    m: int,
    n: int,
    seed: SeedLike = None,
    source: Optional[str] = None,
    quiet: bool = True,
) -> MetaReport:
    """
    Run `m` KS tests of size `n` and test their p-values for uniformity.

    Arguments
    ---------
    target : DistributionSpec | Callable
        Distribution under test, or its CDF.
    sampler : object
        Anything with a `sample(src)` method.
    m : int
        Number of replicates.
    n : int
        Size of every replicate.
    seed : int | SeedSequence, optional
        Root seed. Every replicate gets an independent source spawned from it.
    source : str, optional
        Bit source name.
    quiet : bool
        Disable the progress bar.

    Returns
    -------
    MetaReport
    """
    settings = CONFIG.settings["validation"]
    if m < settings["min_replicates"]:
        minimum = settings["min_replicates"]
        raise InvalidParameter(f"The meta-test needs at least {minimum} replicates")
    if n < settings["min_sample_size"]:
        minimum = settings["min_sample_size"]
        raise InvalidParameter(f"The meta-test needs samples of at least {minimum} values")

    cdf = _resolve_cdf(target)
    sources = spawn_sources(source, seed, m)
    d_stats, p_values = [], []
    for src in tqdm(sources, desc="replicates", unit="rep", disable=_progress_disabled(quiet)):
        report = _replicate(cdf, sampler, n, src)
        d_stats.append(report.d_stat)
        p_values.append(report.p_value)

    uniformity_p = ks_pvalue_asymptotic(ks_statistic(p_values, _uniform_cdf), m)
    logger.debug("Meta-test of %d x %d: uniformity p = %.4g", m, n, uniformity_p)
    return MetaReport(m, n, tuple(d_stats), tuple(p_values), uniformity_p)


def _replicate(cdf: CdfFn, sampler: object, n: int, src: BitSource) -> KSReport:
    sample = sampler.sample  # type: ignore
    values = [sample(src) for _ in range(n)]
    d = ks_statistic(values, cdf)
    return KSReport(d, ks_pvalue_asymptotic(d, n), n)


def run_meta_test(
    target: Union[DistributionSpec, CdfFn],
    sampler: object,
    m: int,
    n: int,
    seed: SeedLike = None,
    source: Optional[str] = None,
    quiet: bool = True,
) -> MetaReport:
    """
    Meta-test with retests.

    A uniformity p-value below the `validation.reject_below` setting is retested on
    independent seeds, up to `validation.retests` times. The last report is returned.
    """
    retests = CONFIG.settings["validation"]["retests"]
    attempts = np.random.SeedSequence(seed).spawn(retests + 1)
    report = None
    for count, attempt in enumerate(attempts):
        report = meta_test(target, sampler, m, n, attempt, source, quiet)
        report = MetaReport(
            report.m, report.n, report.d_stats, report.p_values, report.uniformity_p, count
        )
        if report.passed:
            break
        logger.debug("Uniformity p = %.4g below threshold, retesting", report.uniformity_p)
    return report  # type: ignore
