#!/usr/bin/python3

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple, Union

from zigrand.exceptions import InvalidParameter, UnsupportedFamily


class Family(Enum):
    NORMAL = "normal"
    CAUCHY = "cauchy"
    EXPONENTIAL = "exponential"
    GAMMA = "gamma"
    CHI_SQUARED = "chi_squared"
    WEIBULL = "weibull"
    LOGNORMAL = "lognormal"
    STUDENT_T = "student_t"
    FISHER_F = "fisher_f"

    @classmethod
    def from_name(cls, name: str) -> "Family":
        key = name.strip().lower().replace("-", "_")
        try:
            return cls(key)
        except ValueError:
            raise UnsupportedFamily(
                f"Unknown distribution '{name}'. Valid families: "
                f"{', '.join(i.value for i in cls)}"
            ) from None


# parameter names in constructor order, with their defaults; None means required
PARAMETERS: Dict[Family, Tuple[Tuple[str, Optional[float]], ...]] = {
    Family.NORMAL: (("mean", 0.0), ("stddev", 1.0)),
    Family.CAUCHY: (("mode", 0.0), ("scale", 1.0)),
    Family.EXPONENTIAL: (("rate", 1.0),),
    Family.GAMMA: (("shape", 1.0), ("scale", 1.0)),
    Family.CHI_SQUARED: (("dof", None),),
    Family.WEIBULL: (("shape", 1.0), ("scale", 1.0)),
    Family.LOGNORMAL: (("normal_mean", 0.0), ("normal_stddev", 1.0)),
    Family.STUDENT_T: (("dof", None),),
    Family.FISHER_F: (("dof1", 1.0), ("dof2", 1.0)),
}

# parameters that may take any finite value
LOCATIONS = {"mean", "mode", "normal_mean"}


@dataclass(frozen=True)
class DistributionSpec:

    """
    A distribution family together with its parameters.

    Build instances with `DistributionSpec.create`, which fills in defaults and
    validates the values. Parameters are stored in constructor order.
    """

    family: Family
    params: Tuple[Tuple[str, float], ...]

    @classmethod
    def create(cls, family: Union[Family, str], **params: float) -> "DistributionSpec":
        if not isinstance(family, Family):
            family = Family.from_name(family)
        expected = PARAMETERS[family]
        unknown = set(params).difference(name for name, _ in expected)
        if unknown:
            raise InvalidParameter(
                f"{family.value} does not take {', '.join(sorted(unknown))}. "
                f"Parameters: {', '.join(name for name, _ in expected)}"
            )

        values = []
        for name, default in expected:
            value = params.get(name, default)
            if value is None:
                raise InvalidParameter(f"{family.value} requires a value for '{name}'")
            value = float(value)
            if not math.isfinite(value):
                raise InvalidParameter(f"{family.value} {name} must be finite, got {value!r}")
            if name not in LOCATIONS and not value > 0:
                raise InvalidParameter(f"{family.value} {name} must be positive, got {value!r}")
            values.append((name, value))
        return cls(family, tuple(values))

    def __getitem__(self, name: str) -> float:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    def as_dict(self) -> Dict[str, float]:
        return dict(self.params)

    def __str__(self) -> str:
        args = ", ".join(f"{k}={v:g}" for k, v in self.params)
        return f"{self.family.value}({args})"
