#!/usr/bin/python3

"""
Equal-area partition of a monotone slice.

A slice is one monotone half of a unimodal density, measured from its mode. The
strip coordinates x_1..x_N solve A(x_i) = i * A_tot / N, where A(x) is the area
below the horizontal line at height f(x). x_N is the mode. The first root is
bracketed by doubling the distance from the mode; every later root is bracketed by
the previous root and the mode.
"""

import logging
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

from zigrand._config import CONFIG
from zigrand.exceptions import (
    DomainError,
    IntervalNotFound,
    InvalidParameter,
    SetupError,
    ZigguratAccuracyWarning,
)

from .tail.bases import Side, TailContext, TailStrategy, UniformFn

logger = logging.getLogger(__name__)

Residue = Callable[[float], float]
TailFactory = Callable[[TailContext, Optional[UniformFn]], TailStrategy]

MIN_REGIONS = 8


class Direction(Enum):
    """Monotonicity of a slice. A decreasing slice lies to the right of its mode."""

    INCREASING = -1
    DECREASING = 1

    @property
    def sign(self) -> int:
        return self.value

    @property
    def side(self) -> Side:
        return Side(self.value)


@dataclass(frozen=True)
class MonotoneSlice:

    """
    One monotone half of a unimodal density.

    Attributes
    ----------
    name : str
        Label used in logs and error messages.
    pdf : Callable
        Density of the whole distribution.
    cdf : Callable
        Distribution function.
    ccdf : Callable
        Complementary distribution function. It must stay accurate deep in the right
        tail, computing it as 1 - cdf loses the tail entirely.
    mode : float
        Mode of the density.
    direction : Direction
        Monotonicity of the density on this slice.
    support_end : float
        End of the support on the slice side, +/-inf for unbounded support.
    mass : float
        Probability of the slice, F(m) for increasing slices and Fbar(m) otherwise.
    tail : Callable, optional
        Factory building the tail strategy from its context. Required for
        unbounded support.
    log_pdf : Callable, optional
        Log-density, used for tail ratios.
    peak_q : float, optional
        Algebraic order of growth at the mode. Its presence marks the density as
        unbounded at the mode.
    peak_beta : float, optional
        Shape exponent override for the peak sampler.
    """

    name: str
    pdf: Callable[[float], float]
    cdf: Callable[[float], float]
    ccdf: Callable[[float], float]
    mode: float
    direction: Direction
    support_end: float
    mass: float
    tail: Optional[TailFactory] = None
    log_pdf: Optional[Callable[[float], float]] = None
    peak_q: Optional[float] = None
    peak_beta: Optional[float] = None

    def __post_init__(self) -> None:
        if not 0.0 < self.mass <= 1.0:
            raise InvalidParameter(f"Slice mass must lie in (0, 1], got {self.mass!r}")
        if (self.support_end - self.mode) * self.direction.sign <= 0:
            raise InvalidParameter(
                f"Support end {self.support_end!r} is on the wrong side of the mode {self.mode!r}"
            )
        if self.bounded_support and self.pdf(self.support_end) != 0.0:
            raise InvalidParameter("A bounded slice must vanish at the end of its support")
        if not self.bounded_support and self.tail is None:
            raise InvalidParameter(f"Slice {self.name} has unbounded support but no tail strategy")

    @property
    def bounded_support(self) -> bool:
        return not math.isinf(self.support_end)

    @property
    def unbounded_density(self) -> bool:
        return self.peak_q is not None

    def contains(self, x: float) -> bool:
        offset = (x - self.mode) * self.direction.sign
        return 0.0 <= offset and (x - self.support_end) * self.direction.sign <= 0.0

    def tail_mass(self, x: float) -> float:
        """Probability beyond `x`, away from the mode."""
        return self.ccdf(x) if self.direction is Direction.DECREASING else self.cdf(x)


def area(slice_: MonotoneSlice, x: float) -> float:
    """
    Area of the slice below the horizontal line at height f(x).

    Equal to Fbar(x) + (x - m) f(x) for a decreasing slice and F(x) + (m - x) f(x) for
    an increasing one. The area is `slice_.mass` at the mode and falls monotonically
    away from it.
    """
    if not slice_.contains(x):
        raise DomainError(f"x={x!r} lies outside the {slice_.name} slice")
    if x == slice_.mode:
        return slice_.mass
    width = (x - slice_.mode) * slice_.direction.sign
    return slice_.tail_mass(x) + width * slice_.pdf(x)


def find_interval(slice_: MonotoneSlice, residue: Residue) -> Tuple[float, float]:
    """
    Bracket the root of a decreasing residue by doubling the distance from the mode.

    For bounded support the mode and the support end are returned directly.

    Returns
    -------
    Tuple[float, float]
        (a, b) with residue(a) >= 0 >= residue(b), `a` closer to the mode.

    Raises
    ------
    IntervalNotFound
        If no sign change occurs within 2**max_doubling of the mode.
    """
    m, sign = slice_.mode, slice_.direction.sign
    if slice_.bounded_support:
        return m, slice_.support_end

    max_doubling = CONFIG.settings["setup"]["max_doubling"]
    previous = m
    length = 1.0
    for _ in range(max_doubling):
        x = m + sign * length
        if residue(x) <= 0.0:
            return previous, x
        previous = x
        length *= 2.0
    raise IntervalNotFound(slice_.mass - residue(m), 2.0 ** max_doubling)


def bisect(
    residue: Residue,
    a: float,
    b: float,
    tol: Optional[float] = None,
    max_iterations: Optional[int] = None,
) -> float:
    """
    Root of `residue` in [a, b] by bisection.

    Stops when the bracket is narrower than `tol * max(|a|, |b|)`, when the midpoint
    is no longer strictly inside the bracket, or after `max_iterations` halvings.

    Raises
    ------
    DomainError
        If the residue has the same strict sign at both ends.
    """
    settings = CONFIG.settings["setup"]["bisection"]
    tol = settings["tol"] if tol is None else tol
    max_iterations = settings["max_iterations"] if max_iterations is None else max_iterations

    ra, rb = residue(a), residue(b)
    if ra == 0.0:
        return a
    if rb == 0.0:
        return b
    if (ra > 0.0) == (rb > 0.0):
        raise DomainError(f"residue does not change sign on [{a!r}, {b!r}]")

    for _ in range(max_iterations):
        if abs(b - a) <= tol * max(abs(a), abs(b)):
            break
        mid = 0.5 * (a + b)
        if not min(a, b) < mid < max(a, b):
            break
        rm = residue(mid)
        if rm == 0.0:
            return mid
        if (rm > 0.0) == (ra > 0.0):
            a, ra = mid, rm
        else:
            b, rb = mid, rm
    return 0.5 * (a + b)


@dataclass(frozen=True)
class ZigguratTable:

    """
    Strip coordinates of an equal-area partition.

    Index 0 is the base strip: for unbounded support `x[0]` is the virtual edge of a
    rectangle with the same area as every other region, for bounded support it is the
    end of the support. `x[n]` is the mode. Widths are distances from the mode.

    Attributes
    ----------
    n : int
        Number of regions.
    mode : float
        Mode of the slice.
    direction : Direction
        Monotonicity of the slice.
    mass : float
        Total area of the slice.
    x : Tuple[float, ...]
        Coordinates x_0..x_n.
    y : Tuple[float, ...]
        Densities y_i = f(x_i), with y_0 = 0. y_n is infinite for unbounded densities.
    bounded_support : bool
        True if the base strip is a plain rectangle instead of a tail.
    unbounded_density : bool
        True if the topmost region holds an unbounded peak.
    """

    n: int
    mode: float
    direction: Direction
    mass: float
    x: Tuple[float, ...]
    y: Tuple[float, ...]
    bounded_support: bool
    unbounded_density: bool
    widths: Tuple[float, ...] = field(init=False, repr=False)
    accept_bound: Tuple[float, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.x) != self.n + 1 or len(self.y) != self.n + 1:
            raise InvalidParameter(f"A table of {self.n} regions needs {self.n + 1} coordinates")
        widths = tuple(abs(i - self.mode) for i in self.x)
        # a proposal at or below the next width lies entirely below the density
        accept_bound = list(widths[1:])
        if self.unbounded_density:
            accept_bound[-1] = -math.inf
        object.__setattr__(self, "widths", widths)
        object.__setattr__(self, "accept_bound", tuple(accept_bound))

    @property
    def tail_start(self) -> float:
        return self.x[1]

    @property
    def peak_width(self) -> Optional[float]:
        return self.widths[self.n - 1] if self.unbounded_density else None

    def scaled_widths(self, value_bits: int) -> Tuple[float, ...]:
        """Widths multiplied by 2**-value_bits, turning a masked word into a coordinate."""
        scale = 2.0 ** -value_bits
        return tuple(w * scale for w in self.widths[: self.n])

    def equal_area_residual(self, slice_: MonotoneSlice) -> float:
        """Returns max_i |A(x_i) - i * A_tot / N| / A_tot over i = 1..N-1."""
        step = self.mass / self.n
        worst = 0.0
        for i in range(1, self.n):
            worst = max(worst, abs(area(slice_, self.x[i]) - i * step))
        return worst / self.mass

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "mode": self.mode,
            "direction": self.direction.name.lower(),
            "mass": self.mass,
            "bounded_support": self.bounded_support,
            "unbounded_density": self.unbounded_density,
            "x": list(self.x),
            "y": list(self.y),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ZigguratTable":
        return cls(
            n=data["n"],
            mode=data["mode"],
            direction=Direction[data["direction"].upper()],
            mass=data["mass"],
            x=tuple(float(i) for i in data["x"]),
            y=tuple(float(i) for i in data["y"]),
            bounded_support=data["bounded_support"],
            unbounded_density=data["unbounded_density"],
        )


def build_table(slice_: MonotoneSlice, n: Optional[int] = None) -> ZigguratTable:
    """
    Build the equal-area table of `n` regions for `slice_`.

    Arguments
    ---------
    slice_ : MonotoneSlice
        The monotone slice to partition.
    n : int, optional
        Number of regions, at least 8. Defaults to the `setup.n_regions` setting.

    Returns
    -------
    ZigguratTable

    Raises
    ------
    SetupError
        If the density is not strictly monotone on the slice or the equal-area
        residual is far above the configured tolerance.
    """
    n = n or CONFIG.settings["setup"]["n_regions"]
    if n < MIN_REGIONS:
        raise InvalidParameter(f"A ziggurat needs at least {MIN_REGIONS} regions, got {n}")

    m, sign = slice_.mode, slice_.direction.sign
    step = slice_.mass / n

    def residue_for(i: int) -> Residue:
        target = i * step
        return lambda x: area(slice_, x) - target

    a, b = find_interval(slice_, residue_for(1))
    x: List[float] = [0.0] * (n + 1)
    try:
        x[1] = bisect(residue_for(1), a, b)
        for i in range(2, n):
            x[i] = bisect(residue_for(i), x[i - 1], m)
    except DomainError:
        # the area below f(x) only falls monotonically for a monotone density
        raise SetupError(f"The {slice_.name} density is not monotone on its slice") from None
    x[n] = m

    y: List[float] = [0.0] * (n + 1)
    for i in range(1, n):
        y[i] = slice_.pdf(x[i])
    y[n] = math.inf if slice_.unbounded_density else slice_.pdf(m)

    if slice_.bounded_support:
        x[0] = slice_.support_end
    else:
        x[0] = m + sign * step / y[1]

    for i in range(1, n):
        if not y[i] < y[i + 1] or not (x[i + 1] - x[i]) * sign < 0:
            raise SetupError(
                f"The {slice_.name} density is not strictly monotone near x={x[i]!r}: "
                f"f={y[i]!r} at level {i}, f={y[i + 1]!r} at level {i + 1}"
            )

    table = ZigguratTable(
        n,
        m,
        slice_.direction,
        slice_.mass,
        tuple(x),
        tuple(y),
        slice_.bounded_support,
        slice_.unbounded_density,
    )

    tol = CONFIG.settings["setup"]["equal_area_tol"]
    residual = table.equal_area_residual(slice_)
    if residual > 10 * tol:
        raise SetupError(
            f"Equal-area residual {residual:.3g} for {slice_.name} exceeds {10 * tol:g}"
        )
    if residual > tol:
        warnings.warn(
            f"Equal-area residual {residual:.3g} for {slice_.name} is above {tol:g}",
            ZigguratAccuracyWarning,
        )
    logger.debug(
        "Built %d-region table for %s: x1=%r, residual %.3g", n, slice_.name, x[1], residual
    )
    return table
