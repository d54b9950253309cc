"""Special functions used by the bounds: Gaussian Q and its inverse,
the regularized lower incomplete gamma function, and log-factorials.

Scalars and numpy arrays are both accepted; scalar input gives a Python
float back.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

__all__ = [
    "DomainError",
    "NumericOverflowError",
    "q_func",
    "log_q_func",
    "q_inv",
    "reg_lower_gamma",
    "log_reg_lower_gamma",
    "log_factorial",
]

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class NumericOverflowError(ArithmeticError):
    """Result not representable as a finite double."""


def _out(x):
    # 0-d arrays back to plain floats
    return float(x) if np.ndim(x) == 0 else x


def q_func(x):
    """Standard Gaussian upper-tail probability Q(x) = Pr(N(0,1) > x)."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("q_func requires finite arguments")
    # ndtr(-x) keeps full relative accuracy in the upper tail
    return _out(special.ndtr(-x))


def log_q_func(x):
    """ln Q(x); stays finite far beyond the point where Q(x) underflows."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("log_q_func requires finite arguments")
    return _out(special.log_ndtr(-x))


def q_inv(p):
    """Inverse of :func:`q_func` on the open interval (0, 1).

    Starts from ``-ndtri(p)`` and applies two Newton steps on Q, which
    pins the round trip to a few ulps even deep in the tail.
    """
    p = np.asarray(p, dtype=float)
    if np.any(~(p > 0.0)) or np.any(~(p < 1.0)):
        raise DomainError("q_inv requires 0 < p < 1")
    x = -special.ndtri(p)
    for _ in range(2):
        # Newton on ln Q(x) - ln p: relative residual, robust for tiny p
        resid = special.log_ndtr(-x) - np.log(p)
        # d/dx ln Q(x) = -phi(x) / Q(x)
        log_ratio = -0.5 * x * x - _LOG_SQRT_2PI - special.log_ndtr(-x)
        step = resid / np.exp(log_ratio)
        x = x + step
    return _out(x)


def reg_lower_gamma(s, x):
    """Regularized lower incomplete gamma gamma(s, x) / (s-1)! for integer s >= 1."""
    s_arr = np.asarray(s)
    x = np.asarray(x, dtype=float)
    if np.any(s_arr < 1) or np.any(s_arr != np.floor(s_arr)):
        raise DomainError("reg_lower_gamma requires a positive integer shape")
    if np.any(~(x >= 0.0)):
        raise DomainError("reg_lower_gamma requires x >= 0")
    return _out(special.gammainc(s_arr.astype(float), x))


def log_reg_lower_gamma(s: int, x: float) -> float:
    """ln of :func:`reg_lower_gamma`, accurate when the value underflows.

    Uses ``ln x^s e^{-x} / s! + ln sum_k x^k s!/(s+k)!``; the series is the
    same one behind the small-argument expansion and converges for all x,
    but it is only used where ``gammainc`` itself would underflow.
    """
    if s < 1 or int(s) != s:
        raise DomainError("log_reg_lower_gamma requires a positive integer shape")
    if not x >= 0.0:
        raise DomainError("log_reg_lower_gamma requires x >= 0")
    if x == 0.0:
        return -math.inf
    direct = float(special.gammainc(float(s), x))
    if direct > 1e-280:
        return math.log(direct)
    term = 1.0
    total = 1.0
    k = 0
    while term > 1e-17 * total:
        k += 1
        term *= x / (s + k)
        total += term
    return s * math.log(x) - x - log_factorial(s) + math.log(total)


_EXACT_LOG_FACT = [math.log(math.factorial(k)) for k in range(21)]


def log_factorial(k: int) -> float:
    """ln(k!) for non-negative integer k."""
    if int(k) != k or k < 0:
        raise DomainError("log_factorial requires a non-negative integer")
    k = int(k)
    if k <= 20:
        return _EXACT_LOG_FACT[k]
    return math.lgamma(k + 1.0)
