#!/usr/bin/python3

"""
Special functions backing the distribution CDFs.

Series and continued fractions follow the classical constructions (Lanczos for the
log-gamma function, modified Lentz for the continued fractions). Every iterative
routine has an iteration cap and raises `ConvergenceError` instead of returning a
truncated value.
"""

import math
from dataclasses import dataclass
from typing import Optional

from zigrand._config import CONFIG
from zigrand.exceptions import ConvergenceError, DomainError

FPMIN = 1e-300
SQRT_PI = math.sqrt(math.pi)
LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)

# Lanczos approximation, g=7, n=9
_LANCZOS_G = 7
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61503916999185,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


@dataclass(frozen=True)
class Accuracy:

    """
    Convergence settings for the iterative special functions.

    Attributes
    ----------
    rel_tol : float
        Relative size of the last correction at which an iteration stops.
    max_iterations : int
        Iteration cap; exceeding it raises `ConvergenceError`.
    """

    rel_tol: float = 1e-15
    max_iterations: int = 300

    def __post_init__(self) -> None:
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if self.max_iterations < 1:
            raise DomainError(f"max_iterations must be positive, got {self.max_iterations!r}")


def default_accuracy() -> Accuracy:
    settings = CONFIG.settings["specfun"]
    return Accuracy(settings["rel_tol"], settings["max_iterations"])


def log_gamma(x: float) -> float:
    """Natural logarithm of the gamma function for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma is defined for x > 0, got {x!r}")
    if x == 1.0 or x == 2.0:
        return 0.0
    if x < 0.5:
        # reflection formula
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)

    x -= 1.0
    series = _LANCZOS_COEF[0]
    for i, coef in enumerate(_LANCZOS_COEF[1:], start=1):
        series += coef / (x + i)
    t = x + _LANCZOS_G + 0.5
    return LOG_SQRT_2PI + (x + 0.5) * math.log(t) - t + math.log(series)


def log_beta(a: float, b: float) -> float:
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def _check_gamma_args(a: float, x: float) -> None:
    if not a > 0:
        raise DomainError(f"incomplete gamma requires a > 0, got {a!r}")
    if not x >= 0:
        raise DomainError(f"incomplete gamma requires x >= 0, got {x!r}")


def _gamma_prefactor(a: float, x: float) -> float:
    return math.exp(-x + a * math.log(x) - log_gamma(a))


def _gamma_series(a: float, x: float, accuracy: Accuracy) -> float:
    """Lower regularized incomplete gamma P(a, x) by its power series."""
    if x == 0:
        return 0.0
    ap = a
    term = total = 1.0 / a
    for _ in range(accuracy.max_iterations):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * accuracy.rel_tol:
            return min(1.0, total * _gamma_prefactor(a, x))
    raise ConvergenceError("reg_inc_gamma_lower", accuracy.max_iterations, a, x)


def _gamma_continued_fraction(a: float, x: float, accuracy: Accuracy) -> float:
    """
    Continued fraction for Q(a, x) without its prefactor e**-x x**a / Gamma(a).

    Evaluated with the modified Lentz method; converges quickly for x > a + 1.
    """
    b = x + 1.0 - a
    c = 1.0 / FPMIN
    d = 1.0 / b if b else 1.0 / FPMIN
    h = d
    for i in range(1, accuracy.max_iterations + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < FPMIN:
            d = FPMIN
        c = b + an / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < accuracy.rel_tol:
            return h
    raise ConvergenceError("reg_inc_gamma_upper", accuracy.max_iterations, a, x)


def reg_inc_gamma_lower(a: float, x: float, accuracy: Optional[Accuracy] = None) -> float:
    """
    Regularized lower incomplete gamma function P(a, x).

    Uses the series for x < a + 1 and the complement of the continued fraction
    otherwise.
    """
    _check_gamma_args(a, x)
    accuracy = accuracy or default_accuracy()
    if x == 0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        return _gamma_series(a, x, accuracy)
    return 1.0 - _gamma_prefactor(a, x) * _gamma_continued_fraction(a, x, accuracy)


def reg_inc_gamma_upper(a: float, x: float, accuracy: Optional[Accuracy] = None) -> float:
    """Regularized upper incomplete gamma function Q(a, x) = 1 - P(a, x)."""
    _check_gamma_args(a, x)
    accuracy = accuracy or default_accuracy()
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x, accuracy)
    return _gamma_prefactor(a, x) * _gamma_continued_fraction(a, x, accuracy)


def _beta_continued_fraction(a: float, b: float, x: float, accuracy: Accuracy) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, accuracy.max_iterations + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < accuracy.rel_tol:
            return h
    raise ConvergenceError("reg_inc_beta", accuracy.max_iterations, a, b, x)


def reg_inc_beta(a: float, b: float, x: float, accuracy: Optional[Accuracy] = None) -> float:
    """
    Regularized incomplete beta function I_x(a, b).

    The continued fraction is evaluated directly below x = (a + 1) / (a + b + 2) and
    through the symmetry I_x(a, b) = 1 - I_(1-x)(b, a) above it.
    """
    if not (a > 0 and b > 0):
        raise DomainError(f"incomplete beta requires a, b > 0, got a={a!r}, b={b!r}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"incomplete beta requires 0 <= x <= 1, got {x!r}")
    accuracy = accuracy or default_accuracy()
    if x == 0.0 or x == 1.0:
        return x

    log_front = a * math.log(x) + b * math.log1p(-x) - log_beta(a, b)
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * _beta_continued_fraction(a, b, x, accuracy) / a
    return 1.0 - math.exp(log_front) * _beta_continued_fraction(b, a, 1.0 - x, accuracy) / b


def erfcx(x: float) -> float:
    """Scaled complementary error function exp(x**2) * erfc(x)."""
    if math.isnan(x):
        return x
    if x < 0:
        if x * x > 709.0:
            return math.inf
        return 2.0 * math.exp(x * x) - erfcx(-x)
    if x < 2.0:
        return math.exp(x * x) * (1.0 - _gamma_series(0.5, x * x, default_accuracy()))
    if math.isinf(x):
        return 0.0
    # erfc(x) = Q(1/2, x**2), and exp(x**2) cancels the continued fraction's prefactor
    return x * _gamma_continued_fraction(0.5, x * x, default_accuracy()) / SQRT_PI


def erfc(x: float) -> float:
    """Complementary error function."""
    if math.isnan(x):
        return x
    if x < 0:
        return 2.0 - erfc(-x)
    if x < 2.0:
        return 1.0 - _gamma_series(0.5, x * x, default_accuracy())
    if x > 27.3:
        # below the smallest subnormal
        return 0.0
    return erfcx(x) * math.exp(-x * x)
