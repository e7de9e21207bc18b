#!/usr/bin/python3

import math
from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Dict, Optional, Tuple, Type

from zigrand.exceptions import InvalidParameter, UnsupportedFamily
from zigrand.specfun import (
    LOG_SQRT_2PI,
    erfc,
    log_beta,
    log_gamma,
    reg_inc_beta,
    reg_inc_gamma_lower,
    reg_inc_gamma_upper,
)
from zigrand.ziggurat.tables import Direction, MonotoneSlice, TailFactory
from zigrand.ziggurat.tail import (
    Iccdf,
    Iipdf,
    Ipdf,
    Logarithmic,
    Rational,
    TailContext,
    TailStrategy,
    Trigonometric,
)
from zigrand.ziggurat.tail.bases import UniformFn

from .spec import DistributionSpec, Family

SQRT2 = math.sqrt(2.0)


class Distribution(ABC):

    """
    Base class binding a distribution family to its ziggurat slices.

    Subclasses provide the density functions, the mode and one method per supported
    tail strategy, named `_tail_<strategy>` and listed in `tails` with the default
    first.
    """

    family: Family
    symmetric = False
    support_start = 0.0
    tails: Tuple[str, ...] = ()

    def __init__(self, spec: DistributionSpec) -> None:
        if spec.family is not self.family:
            raise InvalidParameter(f"{type(self).__name__} cannot be built from {spec}")
        self.spec = spec

    @abstractmethod
    def log_pdf(self, x: float) -> float:
        raise NotImplementedError

    def pdf(self, x: float) -> float:
        return math.exp(self.log_pdf(x))

    @abstractmethod
    def cdf(self, x: float) -> float:
        raise NotImplementedError

    @abstractmethod
    def ccdf(self, x: float) -> float:
        raise NotImplementedError

    @property
    @abstractmethod
    def mode(self) -> float:
        raise NotImplementedError

    @property
    def peak_q(self) -> Optional[float]:
        """Algebraic order of growth at the mode, if the density is unbounded there."""
        return None

    @property
    def peak_beta(self) -> Optional[float]:
        return None

    def tail_factory(self, name: Optional[str] = None) -> TailFactory:
        name = name or self.tails[0]
        if name not in self.tails:
            raise UnsupportedFamily(
                f"{self.spec} has no '{name}' tail. Available: {', '.join(self.tails)}"
            )
        return getattr(self, f"_tail_{name}")

    def slices(self, tail: Optional[str] = None) -> Tuple[Optional[MonotoneSlice], MonotoneSlice]:
        """
        Returns the (left, right) monotone slices of the density.

        The left slice is `None` when the mode lies at the start of the support or the
        density is symmetric, in which case the right slice is reflected.
        """
        name = str(self.spec)
        mode = self.mode
        right = MonotoneSlice(
            name,
            self.pdf,
            self.cdf,
            self.ccdf,
            mode,
            Direction.DECREASING,
            math.inf,
            self.ccdf(mode),
            self.tail_factory(tail),
            self.log_pdf,
            self.peak_q,
            self.peak_beta,
        )
        if self.symmetric or mode <= self.support_start:
            return None, right
        left = MonotoneSlice(
            name,
            self.pdf,
            self.cdf,
            self.ccdf,
            mode,
            Direction.INCREASING,
            self.support_start,
            self.cdf(mode),
            log_pdf=self.log_pdf,
        )
        return left, right

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.spec}>"


class Normal(Distribution):
    family = Family.NORMAL
    symmetric = True
    support_start = -math.inf
    tails = ("ipdf", "logarithmic")

    def __init__(self, spec: DistributionSpec) -> None:
        super().__init__(spec)
        self.mu = spec["mean"]
        self.sigma = spec["stddev"]
        self._log_norm = -math.log(self.sigma) - LOG_SQRT_2PI

    def log_pdf(self, x: float) -> float:
        z = (x - self.mu) / self.sigma
        return self._log_norm - 0.5 * z * z

    def cdf(self, x: float) -> float:
        return 0.5 * erfc(-(x - self.mu) / (self.sigma * SQRT2))

    def ccdf(self, x: float) -> float:
        return 0.5 * erfc((x - self.mu) / (self.sigma * SQRT2))

    @property
    def mode(self) -> float:
        return self.mu

    def _tail_ipdf(self, ctx: TailContext, uniform: Optional[UniformFn] = None) -> TailStrategy:
        sign = ctx.side.sign

        def log_ipdf(level: float) -> float:
            return self.mu + sign * self.sigma * math.sqrt(2.0 * (self._log_norm - level))

        def score(y: float) -> float:
            return -(y - self.mu) / (self.sigma * self.sigma)

        return Ipdf(ctx, log_ipdf, score, 1.0, uniform)

    def _tail_logarithmic(
        self, ctx: TailContext, uniform: Optional[UniformFn] = None
    ) -> TailStrategy:
        # sigma = 1/s for the standard normal
        return Logarithmic(ctx, self.sigma ** 2 / abs(ctx.s - self.mu), uniform)


class Cauchy(Distribution):
    family = Family.CAUCHY
    symmetric = True
    support_start = -math.inf
    tails = ("iccdf", "trigonometric")

    def __init__(self, spec: DistributionSpec) -> None:
        super().__init__(spec)
        self.location = spec["mode"]
        self.scale = spec["scale"]
        self._log_norm = -math.log(math.pi * self.scale)

    def log_pdf(self, x: float) -> float:
        z = (x - self.location) / self.scale
        return self._log_norm - math.log1p(z * z)

    def ccdf(self, x: float) -> float:
        z = (x - self.location) / self.scale
        if z > 0:
            return math.atan(1.0 / z) / math.pi
        return 0.5 - math.atan(z) / math.pi

    def cdf(self, x: float) -> float:
        return self.ccdf(2.0 * self.location - x)

    def iccdf(self, p: float) -> float:
        """Inverse of `ccdf` for p in (0, 1/2]."""
        return self.location + self.scale / math.tan(math.pi * p)

    @property
    def mode(self) -> float:
        return self.location

    def _tail_iccdf(self, ctx: TailContext, uniform: Optional[UniformFn] = None) -> TailStrategy:
        return Iccdf(ctx, self.ccdf, self.iccdf, uniform)

    def _tail_trigonometric(
        self, ctx: TailContext, uniform: Optional[UniformFn] = None
    ) -> TailStrategy:
        return Trigonometric(ctx, self.scale, self.location, uniform)


class Exponential(Distribution):
    family = Family.EXPONENTIAL
    tails = ("iccdf",)

    def __init__(self, spec: DistributionSpec) -> None:
        super().__init__(spec)
        self.rate = spec["rate"]
        self._log_rate = math.log(self.rate)

    def log_pdf(self, x: float) -> float:
        if x < 0:
            return -math.inf
        return self._log_rate - self.rate * x

    def cdf(self, x: float) -> float:
        return -math.expm1(-self.rate * x) if x > 0 else 0.0

    def ccdf(self, x: float) -> float:
        return math.exp(-self.rate * x) if x > 0 else 1.0

    def iccdf(self, p: float) -> float:
        return -math.log(p) / self.rate

    @property
    def mode(self) -> float:
        return 0.0

    def _tail_iccdf(self, ctx: TailContext, uniform: Optional[UniformFn] = None) -> TailStrategy:
        return Iccdf(ctx, self.ccdf, self.iccdf, uniform)


def _log_pdf_at_zero(order: float, value_at_one: float) -> float:
    # densities behaving like x**(order - 1) at the origin
    if order < 1.0:
        return math.inf
    if order == 1.0:
        return value_at_one
    return -math.inf


class Gamma(Distribution):
    family = Family.GAMMA
    tails = ("logarithmic",)

    def __init__(self, spec: DistributionSpec) -> None:
        super().__init__(spec)
        self._setup(spec["shape"], spec["scale"])

    def _setup(self, shape: float, scale: float) -> None:
        self.shape = shape
        self.scale = scale
        self._log_norm = -log_gamma(shape) - shape * math.log(scale)

    def log_pdf(self, x: float) -> float:
        if x < 0:
            return -math.inf
        if x == 0:
            return _log_pdf_at_zero(self.shape, self._log_norm)
        return (self.shape - 1.0) * math.log(x) - x / self.scale + self._log_norm

    def cdf(self, x: float) -> float:
        return reg_inc_gamma_lower(self.shape, x / self.scale) if x > 0 else 0.0

    def ccdf(self, x: float) -> float:
        return reg_inc_gamma_upper(self.shape, x / self.scale) if x > 0 else 1.0

    @property
    def mode(self) -> float:
        return (self.shape - 1.0) * self.scale if self.shape > 1.0 else 0.0

    @property
    def peak_q(self) -> Optional[float]:
        return 1.0 - self.shape if self.shape < 1.0 else None

    def _tail_logarithmic(
        self, ctx: TailContext, uniform: Optional[UniformFn] = None
    ) -> TailStrategy:
        if self.shape <= 1.0:
            sigma = self.scale
        else:
            sigma = self.scale * ctx.s / (ctx.s - (self.shape - 1.0) * self.scale)
        return Logarithmic(ctx, sigma, uniform)


class ChiSquared(Gamma):

    """
    Chi-squared distribution as a gamma distribution with shape k/2 and scale 2.

    One degree of freedom uses beta = 1/2 for the peak, which turns the power in the
    peak mapping into a multiplication. Two degrees of freedom are sampled as an
    exponential distribution.
    """

    family = Family.CHI_SQUARED

    def __init__(self, spec: DistributionSpec) -> None:
        Distribution.__init__(self, spec)
        self.dof = spec["dof"]
        self._setup(0.5 * self.dof, 2.0)
        self.tails = ("iccdf", "logarithmic") if self.dof == 2.0 else ("logarithmic",)

    @property
    def peak_beta(self) -> Optional[float]:
        return 0.5 if self.dof == 1.0 else None

    def _tail_iccdf(self, ctx: TailContext, uniform: Optional[UniformFn] = None) -> TailStrategy:
        return Iccdf(ctx, self.ccdf, lambda p: -2.0 * math.log(p), uniform)


class Weibull(Distribution):
    family = Family.WEIBULL
    tails = ("iccdf",)

    def __init__(self, spec: DistributionSpec) -> None:
        super().__init__(spec)
        self.shape = spec["shape"]
        self.scale = spec["scale"]
        self._log_norm = math.log(self.shape / self.scale)

    def log_pdf(self, x: float) -> float:
        if x < 0:
            return -math.inf
        if x == 0:
            return _log_pdf_at_zero(self.shape, self._log_norm)
        z = x / self.scale
        return self._log_norm + (self.shape - 1.0) * math.log(z) - z ** self.shape

    def cdf(self, x: float) -> float:
        return -math.expm1(-((x / self.scale) ** self.shape)) if x > 0 else 0.0

    def ccdf(self, x: float) -> float:
        return math.exp(-((x / self.scale) ** self.shape)) if x > 0 else 1.0

    def iccdf(self, p: float) -> float:
        return self.scale * (-math.log(p)) ** (1.0 / self.shape)

    @property
    def mode(self) -> float:
        if self.shape <= 1.0:
            return 0.0
        return self.scale * ((self.shape - 1.0) / self.shape) ** (1.0 / self.shape)

    @property
    def peak_q(self) -> Optional[float]:
        return 1.0 - self.shape if self.shape < 1.0 else None

    def _tail_iccdf(self, ctx: TailContext, uniform: Optional[UniformFn] = None) -> TailStrategy:
        return Iccdf(ctx, self.ccdf, self.iccdf, uniform)


class LogNormal(Distribution):
    family = Family.LOGNORMAL
    tails = ("iipdf",)

    def __init__(self, spec: DistributionSpec) -> None:
        super().__init__(spec)
        self.mu = spec["normal_mean"]
        self.sigma = spec["normal_stddev"]
        self._log_norm = -math.log(self.sigma) - LOG_SQRT_2PI

    def log_pdf(self, x: float) -> float:
        if x <= 0:
            return -math.inf
        log_x = math.log(x)
        z = (log_x - self.mu) / self.sigma
        return self._log_norm - log_x - 0.5 * z * z

    def cdf(self, x: float) -> float:
        if x <= 0:
            return 0.0
        return 0.5 * erfc(-(math.log(x) - self.mu) / (self.sigma * SQRT2))

    def ccdf(self, x: float) -> float:
        if x <= 0:
            return 1.0
        return 0.5 * erfc((math.log(x) - self.mu) / (self.sigma * SQRT2))

    @property
    def mode(self) -> float:
        return math.exp(self.mu - self.sigma * self.sigma)

    def _tail_iipdf(self, ctx: TailContext, uniform: Optional[UniformFn] = None) -> TailStrategy:
        # decaying factor d(y) = 1/y, the Gaussian in log y is the remainder
        distance = math.log(ctx.s) - self.mu
        if not distance > 0:
            raise InvalidParameter(
                f"The log-normal tail must start beyond the median, got s={ctx.s!r}"
            )
        alpha = self.sigma * self.sigma / distance
        return Iipdf(
            ctx,
            lambda y: -math.log(y),
            lambda level: math.exp(-level),
            lambda y: -1.0 / y,
            alpha,
            uniform,
        )


class StudentT(Distribution):
    family = Family.STUDENT_T
    symmetric = True
    support_start = -math.inf

    def __init__(self, spec: DistributionSpec) -> None:
        super().__init__(spec)
        self.dof = spec["dof"]
        self._log_norm = -0.5 * math.log(self.dof) - log_beta(0.5 * self.dof, 0.5)
        # the Cauchy cover only dominates tails at least as light as its own
        self.tails = ("ipdf", "trigonometric") if self.dof >= 1.0 else ("ipdf",)

    def log_pdf(self, x: float) -> float:
        return self._log_norm - 0.5 * (self.dof + 1.0) * math.log1p(x * x / self.dof)

    def ccdf(self, x: float) -> float:
        if x < 0:
            return 1.0 - self.ccdf(-x)
        return 0.5 * reg_inc_beta(0.5 * self.dof, 0.5, self.dof / (self.dof + x * x))

    def cdf(self, x: float) -> float:
        return self.ccdf(-x)

    @property
    def mode(self) -> float:
        return 0.0

    def _tail_ipdf(self, ctx: TailContext, uniform: Optional[UniformFn] = None) -> TailStrategy:
        nu = self.dof
        sign = ctx.side.sign

        def log_ipdf(level: float) -> float:
            return sign * math.sqrt(nu * math.expm1(-2.0 * (level - self._log_norm) / (nu + 1.0)))

        def score(y: float) -> float:
            return -(nu + 1.0) / (nu / y + y)

        return Ipdf(ctx, log_ipdf, score, (nu + 1.0) / nu, uniform)

    def _tail_trigonometric(
        self, ctx: TailContext, uniform: Optional[UniformFn] = None
    ) -> TailStrategy:
        return Trigonometric(ctx, math.sqrt(self.dof), 0.0, uniform)


class FisherF(Distribution):
    family = Family.FISHER_F
    tails = ("rational",)

    def __init__(self, spec: DistributionSpec) -> None:
        super().__init__(spec)
        self.d1 = spec["dof1"]
        self.d2 = spec["dof2"]
        self._log_norm = 0.5 * self.d1 * math.log(self.d1 / self.d2) - log_beta(
            0.5 * self.d1, 0.5 * self.d2
        )

    def log_pdf(self, x: float) -> float:
        if x < 0:
            return -math.inf
        if x == 0:
            return _log_pdf_at_zero(0.5 * self.d1, self._log_norm)
        return (
            self._log_norm
            + (0.5 * self.d1 - 1.0) * math.log(x)
            - 0.5 * (self.d1 + self.d2) * math.log1p(self.d1 * x / self.d2)
        )

    def cdf(self, x: float) -> float:
        if x <= 0:
            return 0.0
        return reg_inc_beta(0.5 * self.d1, 0.5 * self.d2, self.d1 * x / (self.d1 * x + self.d2))

    def ccdf(self, x: float) -> float:
        if x <= 0:
            return 1.0
        return reg_inc_beta(0.5 * self.d2, 0.5 * self.d1, self.d2 / (self.d2 + self.d1 * x))

    @property
    def mode(self) -> float:
        if self.d1 <= 2.0:
            return 0.0
        return (self.d1 - 2.0) / self.d1 * self.d2 / (self.d2 + 2.0)

    @property
    def peak_q(self) -> Optional[float]:
        return 1.0 - 0.5 * self.d1 if self.d1 < 2.0 else None

    def rational_sigma(self, s: float) -> float:
        d1, d2 = self.d1, self.d2
        if d1 < 2.0:
            return s + (d2 / d1) * (d1 + d2) / (d2 + 2.0)
        return s + s * d2 * (d1 + d2) / (s * d1 * (d2 + 2.0) - d2 * (d1 - 2.0))

    def _tail_rational(self, ctx: TailContext, uniform: Optional[UniformFn] = None) -> TailStrategy:
        return Rational(ctx, 0.5 * self.d2, self.rational_sigma(ctx.s), uniform)


DISTRIBUTIONS: Dict[Family, Type[Distribution]] = {
    cls.family: cls
    for cls in (
        Normal,
        Cauchy,
        Exponential,
        Gamma,
        ChiSquared,
        Weibull,
        LogNormal,
        StudentT,
        FisherF,
    )
}


@lru_cache(maxsize=64)
def distribution_for(spec: DistributionSpec) -> Distribution:
    return DISTRIBUTIONS[spec.family](spec)


