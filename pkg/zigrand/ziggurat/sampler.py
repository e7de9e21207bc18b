#!/usr/bin/python3

import logging
from typing import Callable, Dict, Optional, Union

from zigrand.exceptions import CoveringConditionError, DomainError, InvalidParameter
from zigrand.rng import BitSource, fixed_real

from .peak import PeakSpec, peak_spec_for
from .tables import MonotoneSlice, ZigguratTable, build_table
from .tail.bases import TailContext, TailStrategy, UniformFn, default_uniform

logger = logging.getLogger(__name__)

TAIL_UNIFORMS = ("canonical", "fixed")


class ZigguratSampler:

    """
    Generalized Ziggurat sampler for one monotone slice.

    Each word from the source is split: the low `index_bits` bits select the region,
    the next bit is the sign when `symmetric` is set, and the remaining high bits,
    with the lower ones masked to zero, form the uniform. A proposal that fails the
    density test is retried inside the same region.

    Arguments
    ---------
    table : ZigguratTable
        Equal-area partition of the slice.
    pdf : Callable
        Density of the distribution.
    tail : TailStrategy, optional
        Sampler for the tail beyond x_1. Required for unbounded support.
    peak : PeakSpec, optional
        Sampler for the unbounded topmost region. Required for unbounded densities.
    symmetric : bool
        Reflect the output around the mode with a random sign.
    uniform : Callable, optional
        Uniform generator used by the peak. The tail carries its own.
    """

    def __init__(
        self,
        table: ZigguratTable,
        pdf: Callable[[float], float],
        tail: Optional[TailStrategy] = None,
        peak: Optional[PeakSpec] = None,
        symmetric: bool = False,
        uniform: Optional[UniformFn] = None,
        bits: int = 64,
    ) -> None:
        if (peak is not None) != table.unbounded_density:
            raise InvalidParameter("A peak sampler is needed exactly when the density is unbounded")
        if tail is None and not table.bounded_support:
            raise InvalidParameter("A tail sampler is required for unbounded support")

        self.table = table
        self.pdf = pdf
        self.tail = tail
        self.peak = peak
        self.symmetric = symmetric
        self.uniform = uniform or default_uniform()

        n = table.n
        self.index_bits = (n - 1).bit_length()
        self.index_mask = (1 << self.index_bits) - 1
        self.sign_bit = 1 << self.index_bits if symmetric else 0
        used = self.index_bits + (1 if symmetric else 0)
        self.value_mask = ((1 << bits) - 1) ^ ((1 << used) - 1)
        self.scaled_widths = table.scaled_widths(bits)
        self.accept_bound = table.accept_bound
        self.mode = table.mode
        self.sign = table.direction.sign
        self.top = n - 1 if table.unbounded_density else -1
        self.base = 0 if not table.bounded_support else -1

    def sample(self, src: BitSource) -> float:
        next_bits = src.next_bits
        index_mask, value_mask = self.index_mask, self.value_mask
        scaled, bound = self.scaled_widths, self.accept_bound
        y = self.table.y
        n = self.table.n
        pdf = self.pdf

        while True:
            word = next_bits()
            j = word & index_mask
            if j >= n:
                continue
            sign = -self.sign if word & self.sign_bit else self.sign
            w = (word & value_mask) * scaled[j]
            while True:
                if w <= bound[j]:
                    return self.mode + sign * w
                if j == self.top:
                    return self._reflect(self.peak.sample(pdf, src, self.uniform), sign)
                if j == self.base:
                    return self._reflect(self.tail.sample(src), sign)
                x = self.mode + sign * w
                if fixed_real(src) * (y[j + 1] - y[j]) < pdf(x) - y[j]:
                    return x
                w = (next_bits() & value_mask) * scaled[j]

    @property
    def n_regions(self) -> int:
        return self.table.n

    def _reflect(self, value: float, sign: int) -> float:
        if sign == self.sign:
            return value
        return 2.0 * self.mode - value

    def tail_efficiency(self) -> Optional[float]:
        return self.tail.predicted_efficiency() if self.tail is not None else None

    def peak_efficiency(self) -> Optional[float]:
        return self.peak.efficiency_estimate() if self.peak is not None else None

    def describe(self) -> Dict:
        data: Dict = {
            "regions": self.table.n,
            "mode": self.mode,
            "direction": self.table.direction.name.lower(),
            "symmetric": self.symmetric,
            "x1": self.table.tail_start,
        }
        if self.tail is not None:
            data["tail"] = {"strategy": self.tail.name, **self.tail.params()}
            try:
                data["tail"]["efficiency"] = self.tail_efficiency()
            except DomainError:
                pass
        if self.peak is not None:
            data["peak"] = {
                "q": self.peak.q,
                "beta": self.peak.beta,
                "b": self.peak.b,
                "efficiency": self.peak_efficiency(),
            }
        return data

    def __repr__(self) -> str:
        return f"<ZigguratSampler n={self.table.n} mode={self.mode!r} symmetric={self.symmetric}>"


class AsymmetricSampler:

    """
    Composite of the two monotone slices of a unimodal density.

    The right slice is chosen with probability `right_mass_ratio`, using a canonical
    uniform.
    """

    def __init__(
        self,
        left: ZigguratSampler,
        right: ZigguratSampler,
        right_mass_ratio: float,
        uniform: Optional[UniformFn] = None,
    ) -> None:
        if not 0.0 <= right_mass_ratio <= 1.0:
            raise InvalidParameter(f"right_mass_ratio must lie in [0, 1], got {right_mass_ratio!r}")
        self.left = left
        self.right = right
        self.right_mass_ratio = right_mass_ratio
        self.uniform = uniform or default_uniform()

    @property
    def n_regions(self) -> int:
        return self.right.n_regions

    def sample(self, src: BitSource) -> float:
        if self.uniform(src) < self.right_mass_ratio:
            return self.right.sample(src)
        return self.left.sample(src)

    def describe(self) -> Dict:
        return {
            "right_mass_ratio": self.right_mass_ratio,
            "left": self.left.describe(),
            "right": self.right.describe(),
        }

    def __repr__(self) -> str:
        return f"<AsymmetricSampler right_mass_ratio={self.right_mass_ratio!r}>"


Sampler = Union[ZigguratSampler, AsymmetricSampler]


def tail_uniform_for(name: str) -> UniformFn:
    """Uniform generator for tail and peak mappings, by name."""
    if name == "canonical":
        return default_uniform()
    if name == "fixed":
        return fixed_real
    raise InvalidParameter(f"Unknown tail uniform '{name}', expected one of {TAIL_UNIFORMS}")


def build_slice_sampler(
    slice_: MonotoneSlice,
    n: Optional[int] = None,
    symmetric: bool = False,
    tail_uniform: str = "canonical",
) -> ZigguratSampler:
    """
    Build the table for a slice and wire it with its tail and peak samplers.

    Tail and peak strategies are checked against the density before the sampler is
    returned.

    Arguments
    ---------
    slice_ : MonotoneSlice
        The slice to sample.
    n : int, optional
        Number of regions.
    symmetric : bool
        Reflect outputs around the mode with a random sign.
    tail_uniform : str
        "canonical" feeds tail and peak mappings with the fully random fraction
        generator; "fixed" uses k * 2**-64 instead and truncates the tail.

    Raises
    ------
    CoveringConditionError
        If the tail or peak strategy does not cover the density.
    """
    uniform = tail_uniform_for(tail_uniform)
    table = build_table(slice_, n)

    tail = None
    if not table.bounded_support:
        s = table.tail_start
        ctx = TailContext(
            s, slice_.direction.side, slice_.pdf, slice_.tail_mass(s), slice_.log_pdf
        )
        tail = slice_.tail(ctx, uniform)
        try:
            tail.verify_covering()
        except CoveringConditionError as exc:
            raise exc.with_family(slice_.name) from None

    peak = None
    if table.unbounded_density:
        peak = peak_spec_for(
            slice_.pdf,
            slice_.mode,
            slice_.peak_q,
            table.peak_width,
            slice_.direction.side,
            slice_.peak_beta,
        )
        try:
            peak.verify_covering(slice_.pdf)
        except CoveringConditionError as exc:
            raise exc.with_family(slice_.name) from None

    sampler = ZigguratSampler(table, slice_.pdf, tail, peak, symmetric, uniform)
    logger.debug("Built %r for %s", sampler, slice_.name)
    return sampler
