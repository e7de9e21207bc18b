#!/usr/bin/python3

"""
Rejection sampler for the topmost region of a density that is unbounded at its mode.

The density is assumed to grow algebraically towards the mode m,
f(y) = |y - m|**-q * h(y) with 0 < q < 1 and h bounded near m. The region above
f(m -/+ b) is sampled through the mapping y = m -/+ b * x**(1/beta) and a rejection
step whose bound A is derived from h.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from zigrand._config import CONFIG
from zigrand.exceptions import (
    CoveringConditionError,
    InvalidParameter,
    PeakBoundError,
    RejectionLimitError,
)
from zigrand.rng import BitSource

from .tail.bases import Side, UniformFn, default_uniform

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# relative increase of h over the innermost decade of the scan that counts as unbounded
GROWTH_TOLERANCE = 1e-3


def default_beta(q: float) -> float:
    """Shape exponent (1 - q**2) / 2, close to the optimum for every q."""
    return 0.5 * (1.0 - q * q)


def peak_bound(q: float, beta: float, h_b: float, h_max: float) -> float:
    """Returns the constant A bounding the rejection ratio of the peak sampler."""
    gap = 1.0 - beta - q
    if gap <= 0.0:
        return h_max
    log_factor = math.log(q / gap) + (1.0 - beta) / q * math.log(gap / (1.0 - beta))
    return h_b * math.exp(log_factor) + h_max - h_b


def peak_efficiency_estimate(q: float, beta: float) -> float:
    """
    Estimated acceptance rate of the peak sampler when h is constant.

    At beta = 1 - q the estimate reduces to q.
    """
    _check_shape(q, beta)
    gap = 1.0 - q - beta
    if gap <= 0.0:
        return q
    power = (1.0 - beta) / q
    return beta / (1.0 - q) * gap * math.exp(power * math.log((1.0 - beta) / gap))


def _check_shape(q: float, beta: float) -> None:
    if not 0.0 < q < 1.0:
        raise InvalidParameter(f"Peak growth order q must lie in (0, 1), got {q!r}")
    if not 0.0 < beta <= 1.0 - q + 1e-15:
        raise InvalidParameter(f"Peak shape beta must lie in (0, 1 - q], got {beta!r} for q={q!r}")


@dataclass(frozen=True)
class PeakSpec:

    """
    Parameters of the peak sampler.

    Attributes
    ----------
    m : float
        Mode, where the density is unbounded.
    q : float
        Algebraic order of growth at the mode.
    beta : float
        Shape exponent of the mapping, in (0, 1 - q].
    b : float
        Width of the peak region.
    h_b : float
        h at the outer edge of the peak region.
    h_max : float
        Maximum of h over the peak region.
    a : float
        Bound A >= h_max - h_b used by the rejection step.
    side : Side
        Side of the mode the region lies on.
    """

    m: float
    q: float
    beta: float
    b: float
    h_b: float
    h_max: float
    a: float
    side: Side

    def __post_init__(self) -> None:
        _check_shape(self.q, self.beta)
        if not self.b > 0:
            raise InvalidParameter(f"Peak width must be positive, got {self.b!r}")
        if self.a < self.h_max - self.h_b:
            raise InvalidParameter("Peak bound A must be at least h_max - h_b")

    @property
    def edge(self) -> float:
        """The outer edge m -/+ b."""
        return self.m + self.side.sign * self.b

    @property
    def scale(self) -> float:
        """b**q / A, the factor of the rejection test."""
        return math.exp(self.q * math.log(self.b)) / self.a

    def mapping(self, x: float) -> float:
        t = x * x if self.beta == 0.5 else x ** (1.0 / self.beta)
        return self.m + self.side.sign * self.b * t

    def ratio(self, pdf: Callable[[float], float], x: float, pdf_at_edge: float) -> float:
        """The acceptance ratio C * t * (f(y) - f(edge)) / x for the proposal from `x`."""
        t = x * x if self.beta == 0.5 else x ** (1.0 / self.beta)
        y = self.m + self.side.sign * self.b * t
        return self.scale * t * (pdf(y) - pdf_at_edge) / x

    def sample(
        self, pdf: Callable[[float], float], src: BitSource, uniform: Optional[UniformFn] = None
    ) -> float:
        """
        Draw one variate from the region between f(m -/+ b) and the unbounded peak.

        Arguments
        ---------
        pdf : Callable
            Density of the distribution.
        src : BitSource
            Source of random bits.
        uniform : Callable, optional
            Uniform generator feeding the mapping. Defaults to the canonical generator.

        Returns
        -------
        float
            A variate strictly between m and m -/+ b.
        """
        uniform = uniform or default_uniform()
        pdf_at_edge = pdf(self.edge)
        scale = self.scale
        m, step = self.m, self.side.sign * self.b
        squared = self.beta == 0.5
        inv_beta = 1.0 / self.beta
        limit = CONFIG.settings["tail"]["rejection_limit"]
        for _ in range(limit):
            x = uniform(src)
            if x == 0.0:
                continue
            t = x * x if squared else x ** inv_beta
            y = m + step * t
            if y == m:
                continue
            if x * uniform(src) < scale * t * (pdf(y) - pdf_at_edge):
                return y
        raise RejectionLimitError("peak", limit)

    def verify_covering(
        self, pdf: Callable[[float], float], grid: Optional[Iterable[float]] = None
    ) -> None:
        """
        Check that the acceptance ratio stays within [0, 1] on a grid of x in (0, 1].

        Raises
        ------
        CoveringConditionError
            If the bound A is too small for the density.
        """
        settings = CONFIG.settings["tail"]["covering"]
        if grid is None:
            grid = np.geomspace(settings["grid_min"], 1.0, settings["grid_size"])
        limit = 1.0 + settings["slack"]
        pdf_at_edge = pdf(self.edge)
        for x in grid:
            x = float(x)
            pr = self.ratio(pdf, x, pdf_at_edge)
            if not pr <= limit:
                raise CoveringConditionError("peak", self.m, x, pr)
        logger.debug("%r covers its target", self)

    def efficiency_estimate(self) -> float:
        return peak_efficiency_estimate(self.q, self.beta)


def _golden_section(h: Callable[[float], float], lo: float, hi: float, rounds: int) -> float:
    # maximize h on [lo, hi], returning the best value seen
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    hc, hd = h(c), h(d)
    best = max(hc, hd)
    for _ in range(rounds):
        if hc > hd:
            hi, d, hd = d, c, hc
            c = hi - INV_PHI * (hi - lo)
            hc = h(c)
        else:
            lo, c, hc = c, d, hd
            d = lo + INV_PHI * (hi - lo)
            hd = h(d)
        best = max(best, hc, hd)
    return best


def peak_spec_for(
    pdf: Callable[[float], float],
    m: float,
    q: float,
    b: float,
    side: Side,
    beta: Optional[float] = None,
) -> PeakSpec:
    """
    Build a `PeakSpec` for the density `pdf` over the interval of width `b` next to `m`.

    h(y) = f(y) * |y - m|**q is scanned on a geometric grid of distances from the
    mode, and the grid maximum is refined by a few golden-section rounds.

    Arguments
    ---------
    pdf : Callable
        Density, unbounded at `m`.
    m : float
        Mode.
    q : float
        Algebraic order of growth, in (0, 1).
    b : float
        Width of the peak region.
    side : Side
        Side of `m` where the region lies.
    beta : float, optional
        Shape exponent. Defaults to (1 - q**2) / 2.

    Raises
    ------
    PeakBoundError
        If h is not bounded on the interval, i.e. the density grows faster than |y - m|**-q.
    """
    if beta is None:
        beta = default_beta(q)
    _check_shape(q, beta)
    if not b > 0:
        raise InvalidParameter(f"Peak width must be positive, got {b!r}")

    settings = CONFIG.settings["peak"]
    sign = side.sign

    def h(distance: float) -> float:
        return pdf(m + sign * distance) * distance ** q

    distances = np.geomspace(b * settings["scan_min"], b, settings["scan_points"])
    values = np.array([h(float(d)) for d in distances])
    if not np.all(np.isfinite(values)):
        raise PeakBoundError(f"h is not finite next to the mode m={m!r} with q={q!r}")

    per_decade = int(len(distances) / -math.log10(settings["scan_min"]))
    if values[0] > values[per_decade] * (1.0 + GROWTH_TOLERANCE) and values.argmax() == 0:
        raise PeakBoundError(
            f"The density grows faster than |y - m|**-{q!r} at m={m!r}: h increases by "
            f"{values[0] / values[per_decade]:.4g} over the innermost decade"
        )

    idx = int(values.argmax())
    lo = float(distances[max(idx - 1, 0)])
    hi = float(distances[min(idx + 1, len(distances) - 1)])
    h_max = max(float(values[idx]), _golden_section(h, lo, hi, settings["golden_rounds"]))
    h_b = float(values[-1])
    spec = PeakSpec(m, q, beta, b, h_b, h_max, peak_bound(q, beta, h_b, h_max), side)
    logger.debug("Peak at m=%r: q=%r beta=%r b=%r h_max=%r A=%r", m, q, beta, b, h_max, spec.a)
    return spec
