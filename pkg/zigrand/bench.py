#!/usr/bin/python3

import logging
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

import numpy as np
import psutil
from tqdm import tqdm

from zigrand._config import CONFIG
from zigrand.distributions import DistributionSpec, Family, make_sampler
from zigrand.exceptions import InvalidParameter, UnsupportedFamily
from zigrand.rng import BitSource, fixed_real, make_source
from zigrand.rng.sources import SeedLike
from zigrand.ziggurat import Sampler

logger = logging.getLogger(__name__)

METHODS = ("zigg", "baseline")
CSV_HEADER = ("family", "params", "method", "n_regions", "mean_ns", "sem_ns", "floor_ns")

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BenchResult:

    """
    Timing of one (distribution, method) pair.

    `mean_ns` and `sem_ns` are nanoseconds per variate, averaged over `reps` batches
    of `n_variates`. `floor_ns` is the cost of drawing one raw word from the same
    source, reported separately and not subtracted. `checksum` is the sum of every
    generated variate, equal for equal seeds.
    """

    spec: DistributionSpec
    method: str
    n_regions: Optional[int]
    n_variates: int
    reps: int
    mean_ns: float
    sem_ns: float
    floor_ns: float
    checksum: float

    def csv_row(self) -> Tuple[str, ...]:
        params = ";".join(f"{k}={v:.17g}" for k, v in self.spec.params)
        return (
            self.spec.family.value,
            params,
            self.method,
            "" if self.n_regions is None else str(self.n_regions),
            f"{self.mean_ns:.17g}",
            f"{self.sem_ns:.17g}",
            f"{self.floor_ns:.17g}",
        )


def box_muller(u1: float, u2: float) -> Tuple[float, float]:
    """Two independent standard normal variates from two uniforms, u1 in (0, 1]."""
    r = math.sqrt(-2.0 * math.log(u1))
    return r * math.cos(TWO_PI * u2), r * math.sin(TWO_PI * u2)


def _cauchy(spec: DistributionSpec, u: float) -> float:
    return spec["mode"] + spec["scale"] * math.tan(math.pi * (u - 0.5))


def _exponential(spec: DistributionSpec, u: float) -> float:
    return -math.log1p(-u) / spec["rate"]


def _weibull(spec: DistributionSpec, u: float) -> float:
    return spec["scale"] * (-math.log1p(-u)) ** (1.0 / spec["shape"])


_INVERSE: Dict[Family, Callable[[DistributionSpec, float], float]] = {
    Family.CAUCHY: _cauchy,
    Family.EXPONENTIAL: _exponential,
    Family.WEIBULL: _weibull,
}

BASELINE_FAMILIES = (Family.NORMAL,) + tuple(_INVERSE)


def inverse_transform(spec: DistributionSpec, u: float) -> float:
    """Apply the inverse CDF of `spec` to a uniform `u` in [0, 1)."""
    try:
        return _INVERSE[spec.family](spec, u)
    except KeyError:
        raise UnsupportedFamily(f"No inverse transform baseline for {spec.family.value}") from None


class BaselineSampler:

    """
    Classical sampler used as a speed reference: Box-Muller for the normal
    distribution, the inverse CDF for Cauchy, exponential and Weibull.
    """

    def __init__(self, spec: DistributionSpec) -> None:
        if spec.family not in BASELINE_FAMILIES:
            raise UnsupportedFamily(
                f"No baseline for {spec.family.value}. "
                f"Baselines exist for: {', '.join(i.value for i in BASELINE_FAMILIES)}"
            )
        self.spec = spec
        self._spare: Optional[float] = None

    def sample(self, src: BitSource) -> float:
        if self.spec.family is not Family.NORMAL:
            return inverse_transform(self.spec, fixed_real(src))
        if self._spare is not None:
            value, self._spare = self._spare, None
        else:
            value, self._spare = box_muller(1.0 - fixed_real(src), fixed_real(src))
        return self.spec["mean"] + self.spec["stddev"] * value


def baseline_sample(spec: DistributionSpec, src: BitSource) -> float:
    """One variate from the classical method for `spec`."""
    return BaselineSampler(spec).sample(src)


@contextmanager
def pinned_cpu(enabled: bool) -> Iterator[None]:
    """Pin the current process to the CPU it is running on, where the platform allows it."""
    process = psutil.Process()
    if not enabled or not hasattr(process, "cpu_affinity"):
        yield
        return
    original = process.cpu_affinity()
    try:
        process.cpu_affinity([original[0]])
    except (psutil.Error, OSError, ValueError):
        logger.debug("CPU pinning is not available")
        yield
        return
    try:
        yield
    finally:
        process.cpu_affinity(original)


def _time_batch(draw: Callable[[BitSource], float], src: BitSource, n: int) -> Tuple[int, float]:
    sink = 0.0
    start = time.perf_counter_ns()
    for _ in range(n):
        sink += draw(src)
    return time.perf_counter_ns() - start, sink


def _floor_ns(src: BitSource, n: int) -> float:
    next_bits = src.next_bits
    sink = 0
    start = time.perf_counter_ns()
    for _ in range(n):
        sink ^= next_bits()
    return (time.perf_counter_ns() - start) / n


def run_bench(
    spec: DistributionSpec,
    method: str = "zigg",
    n: Optional[int] = None,
    reps: Optional[int] = None,
    seed: SeedLike = None,
    n_regions: Optional[int] = None,
    source: Optional[str] = None,
    quiet: bool = True,
) -> BenchResult:
    """
    Time `reps` batches of `n` variates.

    Arguments
    ---------
    spec : DistributionSpec
        Distribution to sample.
    method : str
        "zigg" for the ziggurat sampler, "baseline" for the classical method.
    n : int, optional
        Variates per batch, at least `bench.min_variates`.
    reps : int, optional
        Number of batches.
    seed : int | SeedSequence, optional
        Seed of the bit source. Equal seeds give equal variate streams.
    n_regions : int, optional
        Number of ziggurat regions.
    source : str, optional
        Bit source name.
    quiet : bool
        Disable the progress bar.
    """
    settings = CONFIG.settings["bench"]
    n = n or settings["n_variates"]
    reps = reps or settings["reps"]
    if n < settings["min_variates"]:
        raise InvalidParameter(f"Benchmarks need at least {settings['min_variates']} variates")
    if reps < 1:
        raise InvalidParameter("Benchmarks need at least one repetition")

    sampler: Union[Sampler, BaselineSampler]
    if method == "zigg":
        sampler = make_sampler(spec, n_regions)
        n_regions = sampler.n_regions
    elif method == "baseline":
        sampler = BaselineSampler(spec)
        n_regions = None
    else:
        raise InvalidParameter(f"Unknown method '{method}', expected one of {METHODS}")

    src = make_source(source, seed)
    draw = sampler.sample
    timings: List[float] = []
    checksum = 0.0
    disable = True if quiet or not CONFIG.settings["console"]["progress"] else None
    with pinned_cpu(settings["pin_cpu"]):
        floor = _floor_ns(make_source(source, seed), n)
        for _ in tqdm(range(reps), desc=f"{spec} {method}", unit="rep", disable=disable):
            elapsed, sink = _time_batch(draw, src, n)
            timings.append(elapsed / n)
            checksum += sink

    values = np.asarray(timings)
    sem = float(values.std(ddof=1) / math.sqrt(reps)) if reps > 1 else 0.0
    result = BenchResult(
        spec, method, n_regions, n, reps, float(values.mean()), sem, floor, checksum
    )
    logger.debug("%s %s: %.2f +/- %.2f ns", spec, method, result.mean_ns, result.sem_ns)
    return result
