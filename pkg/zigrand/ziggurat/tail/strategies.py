#!/usr/bin/python3

import math
from typing import Callable, Optional

from zigrand.exceptions import InvalidParameter

from .bases import ExactTail, RejectionTail, Side, TailContext, UniformFn

HALF_PI = 0.5 * math.pi


def _positive(name: str, value: float) -> float:
    if not value > 0 or math.isinf(value):
        raise InvalidParameter(f"{name} must be a positive finite number, got {value!r}")
    return float(value)


class Icdf(ExactTail):
    """
    Left tail by inversion: y = F^-1(x * F(s)).

    Arguments
    ---------
    cdf : Callable
        Distribution function.
    icdf : Callable
        Its inverse on (0, F(s)].
    """

    name = "icdf"

    def __init__(
        self,
        ctx: TailContext,
        cdf: Callable[[float], float],
        icdf: Callable[[float], float],
        uniform: Optional[UniformFn] = None,
    ) -> None:
        if ctx.side is not Side.LEFT:
            raise InvalidParameter("Icdf samples left tails, use Iccdf for a right tail")
        super().__init__(ctx, uniform)
        self.icdf = icdf
        self.mass = cdf(ctx.s)

    def mapping(self, x: float) -> float:
        return self.icdf(x * self.mass)


class Iccdf(ExactTail):
    """
    Right tail by inversion of the complementary CDF: y = Fbar^-1(x * Fbar(s)).

    Arguments
    ---------
    ccdf : Callable
        Complementary distribution function.
    iccdf : Callable
        Its inverse on (0, Fbar(s)].
    """

    name = "iccdf"

    def __init__(
        self,
        ctx: TailContext,
        ccdf: Callable[[float], float],
        iccdf: Callable[[float], float],
        uniform: Optional[UniformFn] = None,
    ) -> None:
        if ctx.side is not Side.RIGHT:
            raise InvalidParameter("Iccdf samples right tails, use Icdf for a left tail")
        super().__init__(ctx, uniform)
        self.iccdf = iccdf
        self.mass = ccdf(ctx.s)

    def mapping(self, x: float) -> float:
        return self.iccdf(x * self.mass)


class Ipdf(RejectionTail):
    """
    Tail through the inverse density: y = f^-1(x**alpha * f(s)).

    With alpha = 1 the cover fits any log-concave tail. Heavier tails need alpha > 1,
    which lowers the efficiency by a factor 1/alpha.

    Arguments
    ---------
    log_ipdf : Callable
        Inverse of the log-density on the tail: maps log f(y) back to y.
    score : Callable
        Derivative of the log-density, f'(y) / f(y).
    alpha : float
        Relaxation exponent, at least 1.
    """

    name = "ipdf"

    def __init__(
        self,
        ctx: TailContext,
        log_ipdf: Callable[[float], float],
        score: Callable[[float], float],
        alpha: float = 1.0,
        uniform: Optional[UniformFn] = None,
    ) -> None:
        if not alpha >= 1.0:
            raise InvalidParameter(f"Ipdf needs alpha >= 1, got {alpha!r}")
        super().__init__(ctx, uniform)
        self.log_ipdf = log_ipdf
        self.score = score
        self.alpha = float(alpha)
        self._score_at_s = score(ctx.s)

    def mapping(self, x: float) -> float:
        return self.log_ipdf(self.alpha * math.log(x) + self.ctx.log_pdf_at_s)

    def log_acceptance(self, x: float, y: float) -> float:
        # x**(2a-1) f'(s)/f'(y), with f(y) = x**a f(s) folded in
        return (self.alpha - 1.0) * math.log(x) + math.log(self._score_at_s / self.score(y))

    def slope_at_one(self) -> float:
        return self.alpha / abs(self._score_at_s)

    def params(self) -> dict:
        return {"alpha": self.alpha}


class Iipdf(RejectionTail):
    """
    Tail through the inverse of a decaying factor: f = d * r, y = d^-1(x**alpha * d(s)).

    Useful when f itself has no closed-form inverse but a dominant factor d does.

    Arguments
    ---------
    log_d : Callable
        log d(y).
    log_d_inv : Callable
        Inverse of `log_d` on the tail.
    d_score : Callable
        d'(y) / d(y).
    alpha : float
        Relaxation exponent, positive.
    """

    name = "iipdf"

    def __init__(
        self,
        ctx: TailContext,
        log_d: Callable[[float], float],
        log_d_inv: Callable[[float], float],
        d_score: Callable[[float], float],
        alpha: float = 1.0,
        uniform: Optional[UniformFn] = None,
    ) -> None:
        super().__init__(ctx, uniform)
        self.log_d_inv = log_d_inv
        self.d_score = d_score
        self.alpha = _positive("alpha", alpha)
        self._log_d_at_s = log_d(ctx.s)
        self._d_score_at_s = d_score(ctx.s)

    def mapping(self, x: float) -> float:
        return self.log_d_inv(self.alpha * math.log(x) + self._log_d_at_s)

    def log_acceptance(self, x: float, y: float) -> float:
        # x**(a-1) r(y)/r(s) * phi(s)/phi(y), with r = f/d and d(y)/d(s) = x**a
        return (
            self.ctx.log_ratio(y) - math.log(x) + math.log(self._d_score_at_s / self.d_score(y))
        )

    def slope_at_one(self) -> float:
        return self.alpha / abs(self._d_score_at_s)

    def params(self) -> dict:
        return {"alpha": self.alpha}


class Logarithmic(RejectionTail):
    """
    Exponential cover: y = s -/+ sigma * ln x. Only for light tails.

    Arguments
    ---------
    sigma : float
        Scale of the exponential cover.
    """

    name = "logarithmic"

    def __init__(self, ctx: TailContext, sigma: float, uniform: Optional[UniformFn] = None) -> None:
        super().__init__(ctx, uniform)
        self.sigma = _positive("sigma", sigma)
        self._step = -ctx.side.sign * self.sigma

    def mapping(self, x: float) -> float:
        return self.ctx.s + self._step * math.log(x)

    def log_acceptance(self, x: float, y: float) -> float:
        return self.ctx.log_ratio(y) - math.log(x)

    def slope_at_one(self) -> float:
        return self.sigma

    def params(self) -> dict:
        return {"sigma": self.sigma}


class Trigonometric(RejectionTail):
    """
    Cauchy cover located at `y0` with scale `gamma`, sampled through the tangent map.

    For the right tail the angle runs from atan((s - y0) / gamma) at x = 1 up to pi/2
    as x goes to zero. The tangent near pi/2 is taken as a cotangent of the small
    remaining angle so tiny uniforms keep their precision.

    Arguments
    ---------
    gamma : float
        Scale of the Cauchy cover.
    y0 : float
        Location of the Cauchy cover.
    """

    name = "trigonometric"

    def __init__(
        self,
        ctx: TailContext,
        gamma: float,
        y0: float = 0.0,
        uniform: Optional[UniformFn] = None,
    ) -> None:
        super().__init__(ctx, uniform)
        self.gamma = _positive("gamma", gamma)
        self.y0 = float(y0)
        start = (ctx.s - self.y0) / self.gamma
        self._c1 = math.atan(start) - ctx.side.sign * HALF_PI
        self._span = abs(self._c1)
        self._log_c2 = math.log1p(start * start)

    def _tangent(self, x: float) -> float:
        return self.ctx.side.sign / math.tan(self._span * x)

    def mapping(self, x: float) -> float:
        return self.gamma * self._tangent(x) + self.y0

    def log_acceptance(self, x: float, y: float) -> float:
        t = (y - self.y0) / self.gamma
        return self.ctx.log_ratio(y) + math.log1p(t * t) - self._log_c2

    def slope_at_one(self) -> float:
        return self.gamma * math.exp(self._log_c2) * self._span

    def params(self) -> dict:
        return {"gamma": self.gamma, "y0": self.y0}


class Rational(RejectionTail):
    """
    Pareto type II cover starting at s: y = s -/+ sigma * (x**(-1/alpha) - 1).

    Arguments
    ---------
    alpha : float
        Tail index of the cover; the target must decay at least like |y|**-(alpha+1).
    sigma : float
        Scale of the cover.
    """

    name = "rational"

    def __init__(
        self, ctx: TailContext, alpha: float, sigma: float, uniform: Optional[UniformFn] = None
    ) -> None:
        super().__init__(ctx, uniform)
        self.alpha = _positive("alpha", alpha)
        self.sigma = _positive("sigma", sigma)
        self._step = ctx.side.sign * self.sigma

    def mapping(self, x: float) -> float:
        return self.ctx.s + self._step * math.expm1(-math.log(x) / self.alpha)

    def log_acceptance(self, x: float, y: float) -> float:
        log_t = -math.log(x) / self.alpha
        return self.ctx.log_ratio(y) + (self.alpha + 1.0) * log_t

    def slope_at_one(self) -> float:
        return self.sigma / self.alpha

    def params(self) -> dict:
        return {"alpha": self.alpha, "sigma": self.sigma}


class ExponentialMap(RejectionTail):
    """
    Cover for super heavy tails: y = s -/+ sigma * (exp(x**(-1/alpha) - 1) - 1).

    Arguments
    ---------
    alpha : float
        The target must decay at least like |y|**-1 (ln|y|)**-(alpha+1).
    sigma : float
        Scale of the cover.
    """

    name = "exponential_map"

    def __init__(
        self, ctx: TailContext, alpha: float, sigma: float, uniform: Optional[UniformFn] = None
    ) -> None:
        super().__init__(ctx, uniform)
        self.alpha = _positive("alpha", alpha)
        self.sigma = _positive("sigma", sigma)
        self._step = ctx.side.sign * self.sigma

    def mapping(self, x: float) -> float:
        t1 = math.exp(-math.log(x) / self.alpha)
        return self.ctx.s + self._step * math.expm1(t1 - 1.0)

    def log_acceptance(self, x: float, y: float) -> float:
        log_t1 = -math.log(x) / self.alpha
        return self.ctx.log_ratio(y) + math.expm1(log_t1) + (self.alpha + 1.0) * log_t1

    def slope_at_one(self) -> float:
        return self.sigma / self.alpha

    def params(self) -> dict:
        return {"alpha": self.alpha, "sigma": self.sigma}
