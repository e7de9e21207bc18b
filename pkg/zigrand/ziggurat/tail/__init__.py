#!/usr/bin/python3

from .bases import ExactTail, RejectionTail, Side, TailContext, TailStrategy  # noqa 401
from .strategies import (  # noqa 401
    ExponentialMap,
    Icdf,
    Iccdf,
    Iipdf,
    Ipdf,
    Logarithmic,
    Rational,
    Trigonometric,
)

STRATEGIES = {
    cls.name: cls
    for cls in (Icdf, Iccdf, Ipdf, Iipdf, Logarithmic, Trigonometric, Rational, ExponentialMap)
}
