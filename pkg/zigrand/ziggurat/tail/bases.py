#!/usr/bin/python3

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, Optional

import numpy as np

from zigrand._config import CONFIG
from zigrand.exceptions import CoveringConditionError, DomainError, RejectionLimitError
from zigrand.rng import BitSource, CanonicalFloatGen

logger = logging.getLogger(__name__)

UniformFn = Callable[[BitSource], float]


@lru_cache(maxsize=None)
def default_uniform() -> CanonicalFloatGen:
    return CanonicalFloatGen()


class Side(Enum):
    """Which way a tail extends from its start. The sign is the direction of travel."""

    LEFT = -1
    RIGHT = 1

    @property
    def sign(self) -> int:
        return self.value


@dataclass(frozen=True)
class TailContext:

    """
    A tail of a monotone density, starting at `s` and extending to infinity on `side`.

    Attributes
    ----------
    s : float
        Tail start coordinate.
    side : Side
        Side of `s` the tail lies on.
    pdf : Callable
        Density of the (unconditioned) distribution.
    tail_mass : float, optional
        Probability beyond `s`. Needed only for efficiency predictions.
    log_pdf : Callable, optional
        Log-density. When given, density ratios are formed in log space.
    """

    s: float
    side: Side
    pdf: Callable[[float], float]
    tail_mass: Optional[float] = None
    log_pdf: Optional[Callable[[float], float]] = None
    pdf_at_s: float = field(init=False)
    log_pdf_at_s: float = field(init=False)

    def __post_init__(self) -> None:
        pdf_at_s = self.pdf(self.s)
        if not pdf_at_s > 0:
            raise DomainError(f"Tail start s={self.s!r} lies outside the density support")
        log_pdf_at_s = self.log_pdf(self.s) if self.log_pdf else math.log(pdf_at_s)
        object.__setattr__(self, "pdf_at_s", pdf_at_s)
        object.__setattr__(self, "log_pdf_at_s", log_pdf_at_s)

    def log_ratio(self, y: float) -> float:
        """Returns log(f(y) / f(s))."""
        if self.log_pdf is not None:
            return self.log_pdf(y) - self.log_pdf_at_s
        value = self.pdf(y)
        if value <= 0:
            return -math.inf
        return math.log(value / self.pdf_at_s)

    def beyond(self, y: float) -> bool:
        """True if `y` lies strictly inside the tail."""
        return (y - self.s) * self.side.sign > 0


class TailStrategy(ABC):

    """
    Base ABC for tail samplers.

    A strategy maps a uniform x in (0, 1) through a monotone function g with
    g(1) = s and g(0+) at infinity on the tail side. Exact strategies return g(x)
    directly; rejection strategies accept it with a probability that makes the
    output follow the conditional tail density.

    This class should not be directly subclassed from. Instead, use
    `ExactTail` or `RejectionTail`.
    """

    name = "tail"

    def __init__(self, ctx: TailContext, uniform: Optional[UniformFn] = None) -> None:
        self.ctx = ctx
        self.uniform = uniform or default_uniform()
        self.rejection_limit = CONFIG.settings["tail"]["rejection_limit"]

    @abstractmethod
    def mapping(self, x: float) -> float:
        """
        Return g(x), the tail coordinate for uniform `x`.

        May raise `OverflowError` when g(x) is beyond the largest finite float.
        """
        raise NotImplementedError

    @abstractmethod
    def propose(self, src: BitSource) -> Optional[float]:
        """
        Make a single attempt.

        Returns
        -------
        float | None
            The accepted variate, or `None` if the proposal was rejected.
        """
        raise NotImplementedError

    @abstractmethod
    def predicted_efficiency(self) -> float:
        """Probability that one call to `propose` succeeds."""
        raise NotImplementedError

    def sample(self, src: BitSource) -> float:
        propose = self.propose
        for _ in range(self.rejection_limit):
            y = propose(src)
            if y is not None:
                return y
        raise RejectionLimitError(self.name, self.rejection_limit)

    def verify_covering(self) -> None:
        """Check the strategy against the target density. Exact strategies always pass."""

    def params(self) -> dict:
        return {}

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v!r}" for k, v in self.params().items())
        return f"<{type(self).__name__} s={self.ctx.s!r} {params}>"


class ExactTail(TailStrategy):

    """
    Abstract base class for inversion tails.

    The mapping is the exact inverse (complementary) CDF of the conditional tail,
    so every in-tail proposal is accepted.
    """

    def propose(self, src: BitSource) -> Optional[float]:
        x = self.uniform(src)
        if x == 0.0:
            return None
        try:
            y = self.mapping(x)
        except OverflowError:
            return None
        if not self.ctx.beyond(y) or math.isinf(y):
            return None
        return y

    def predicted_efficiency(self) -> float:
        return 1.0


class RejectionTail(TailStrategy):

    """
    Abstract base class for tails sampled from a covering distribution.

    Subclasses give the mapping, the log of the acceptance probability and the slope
    of the mapping at x = 1. The acceptance probability is normalized to 1 at x = 1.
    """

    @abstractmethod
    def log_acceptance(self, x: float, y: float) -> float:
        """Log of the acceptance probability for the proposal y = g(x)."""
        raise NotImplementedError

    @abstractmethod
    def slope_at_one(self) -> float:
        """|g'(1)|, the spread of the cover at the start of the tail."""
        raise NotImplementedError

    def propose(self, src: BitSource) -> Optional[float]:
        x = self.uniform(src)
        if x == 0.0:
            return None
        try:
            y = self.mapping(x)
        except OverflowError:
            return None
        if math.isinf(y) or not self.ctx.beyond(y):
            return None
        log_pr = self.log_acceptance(x, y)
        if log_pr >= 0.0 or self.uniform(src) < math.exp(log_pr):
            return y
        return None

    def predicted_efficiency(self) -> float:
        # the cover in x is uniform, so the acceptance rate is 1 / max of the x-space density
        if self.ctx.tail_mass is None:
            raise DomainError(f"{self.name} efficiency needs the tail mass beyond s")
        return self.ctx.tail_mass / (self.ctx.pdf_at_s * self.slope_at_one())

    def verify_covering(self, grid: Optional[Iterable[float]] = None) -> None:
        """
        Evaluate the acceptance probability on a log-spaced grid of x in (0, 1].

        Raises
        ------
        CoveringConditionError
            If any acceptance probability exceeds 1 (plus the configured slack) or is NaN.
        """
        settings = CONFIG.settings["tail"]["covering"]
        if grid is None:
            grid = np.geomspace(settings["grid_min"], 1.0, settings["grid_size"])
        limit = math.log1p(settings["slack"])
        worst = -math.inf
        for x in grid:
            x = float(x)
            try:
                y = self.mapping(x)
            except OverflowError:
                continue
            if math.isinf(y):
                continue
            log_pr = self.log_acceptance(x, y)
            if not log_pr <= limit:
                probability = math.nan if math.isnan(log_pr) else math.exp(min(log_pr, 700.0))
                raise CoveringConditionError(self.name, self.ctx.s, x, probability)
            worst = max(worst, log_pr)
        logger.debug("%r covers its target, max log acceptance %.3g", self, worst)
