#!/usr/bin/python3

from typing import Optional


class ZigguratError(Exception):
    pass


# parameters and special functions


class InvalidParameter(ZigguratError, ValueError):
    pass


class DomainError(ZigguratError, ValueError):
    pass


class ConvergenceError(ZigguratError, ArithmeticError):
    def __init__(self, name: str, iterations: int, *args: float) -> None:
        arguments = ", ".join(repr(i) for i in args)
        super().__init__(f"{name}({arguments}) did not converge within {iterations} iterations")


class UnsupportedFamily(ZigguratError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


# setup


class IntervalNotFound(ZigguratError):
    def __init__(self, target: float, limit: float) -> None:
        super().__init__(
            f"No sign change of the residue for target area {target!r} within {limit:g} "
            "of the mode. The density or its CDF is malformed."
        )


class SetupError(ZigguratError):
    pass


class CoveringConditionError(SetupError):

    """
    Raised when a tail or peak strategy does not dominate the target density.

    Attributes
    ----------
    strategy : str
        Name of the strategy that failed the check.
    s : float
        Start of the tail (or mode for peak strategies).
    x : float
        Grid point in (0, 1) where the acceptance probability left [0, 1].
    probability : float
        The offending acceptance probability.
    """

    def __init__(
        self, strategy: str, s: float, x: float, probability: float, family: Optional[str] = None
    ) -> None:
        self.strategy = strategy
        self.s = s
        self.x = x
        self.probability = probability
        self.family = family
        where = f" for {family}" if family else ""
        super().__init__(
            f"{strategy} strategy{where} does not cover the target from s={s!r}: "
            f"acceptance probability {probability!r} at x={x!r}"
        )

    def with_family(self, family: str) -> "CoveringConditionError":
        return CoveringConditionError(self.strategy, self.s, self.x, self.probability, family)


class PeakBoundError(SetupError):
    pass


# sampling


class RejectionLimitError(ZigguratError):
    def __init__(self, strategy: str, limit: int) -> None:
        super().__init__(
            f"{strategy} rejected {limit} consecutive proposals. The strategy parameters are "
            "probably mis-specified for this density."
        )


# cli


class InvalidCommand(ZigguratError):
    pass


class ZigguratEfficiencyWarning(Warning):
    pass


class ZigguratAccuracyWarning(Warning):
    pass
