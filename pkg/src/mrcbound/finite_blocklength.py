"""Normal-approximation rate machinery for a complex AWGN link of
blocklength ``n``: dispersion, achievable rate, the dispersion-free
rate lower bound, the SNR threshold, and the conditional error
probability at a fixed SNR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import DomainError, NumericOverflowError, q_func, q_inv

__all__ = [
    "V_BAR",
    "LOG2E_SQ",
    "CodeParams",
    "dispersion",
    "achievable_rate",
    "rate_lower_bound",
    "snr_threshold",
    "conditional_error_prob",
]

LOG2E_SQ = math.log2(math.e) ** 2
#: supremum of the dispersion, 1 / (ln 2)^2
V_BAR = 1.0 / math.log(2.0) ** 2


@dataclass(frozen=True)
class CodeParams:
    """Codeword length ``n`` (channel uses) and code rate ``R`` (bits/use)."""

    n: int
    R: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"blocklength must be an integer >= 2, got {self.n}")
        if not (self.R > 0 and math.isfinite(self.R)):
            raise DomainError(f"code rate must be positive, got {self.R}")

    @property
    def log_term(self) -> float:
        """The ``log2(n) / (2n)`` correction of the normal approximation."""
        return math.log2(self.n) / (2.0 * self.n)


def _check_rho(rho):
    rho = np.asarray(rho, dtype=float)
    if np.any(~(rho >= 0.0)):
        raise DomainError("SNR must be non-negative")
    return rho


def _check_eps(eps):
    if not (0.0 < eps < 1.0):
        raise DomainError(f"error probability must lie in (0, 1), got {eps}")


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def dispersion(rho):
    """Channel dispersion V(rho) in bits^2 per channel use."""
    rho = _check_rho(rho)
    inv = 1.0 / (1.0 + rho)
    # factored so that neither small nor huge rho loses digits or overflows
    return _out((rho * inv) * ((2.0 + rho) * inv) * LOG2E_SQ)


def achievable_rate(rho, code: CodeParams, eps: float):
    """Normal-approximation maximal rate at SNR ``rho`` and error ``eps``."""
    _check_eps(eps)
    rho = _check_rho(rho)
    v = np.asarray(dispersion(rho))
    out = np.log2(1.0 + rho) - np.sqrt(v / code.n) * q_inv(eps) + code.log_term
    return _out(out)


def rate_lower_bound(rho, code: CodeParams, eps: float):
    """Rate lower bound using the dispersion supremum instead of V(rho).

    The ``log2(n)/(2n)`` term is dropped; for ``eps < 1/2`` the result
    never exceeds :func:`achievable_rate`.
    """
    _check_eps(eps)
    rho = _check_rho(rho)
    out = np.log2(1.0 + rho) - math.sqrt(V_BAR / code.n) * q_inv(eps)
    return _out(out)


def snr_threshold(code: CodeParams, eps: float) -> float:
    """SNR below which the rate lower bound falls short of ``code.R``.

    Clamped at 0: for small ``R`` and ``eps`` near 1 the exponent turns
    negative, and any negative threshold means the same (no outage).
    """
    _check_eps(eps)
    exponent = code.R + math.sqrt(V_BAR / code.n) * q_inv(eps)
    try:
        tau = math.expm1(math.log(2.0) * exponent)
    except OverflowError:
        raise NumericOverflowError(f"threshold overflows for eps={eps}") from None
    if not math.isfinite(tau):
        raise NumericOverflowError(f"threshold overflows for eps={eps}")
    return max(tau, 0.0)


def conditional_error_prob(rho, code: CodeParams, *, use_vbar: bool = False):
    """Decoding error probability of a length-``n`` code at fixed SNR.

    Solves the normal approximation for the error probability:
    ``Q(sqrt(n / V(rho)) * (log2(1 + rho) - R + log2(n) / (2n)))``.
    With ``use_vbar`` the dispersion-free lower bound is inverted instead
    (``V`` replaced by its supremum, no log term).
    """
    rho = _check_rho(rho)
    if use_vbar:
        arg = math.sqrt(code.n / V_BAR) * (np.log2(1.0 + rho) - code.R)
        return _out(np.asarray(q_func(arg)))
    v = np.asarray(dispersion(rho))
    margin = np.log2(1.0 + rho) - code.R + code.log_term
    with np.errstate(divide="ignore", invalid="ignore"):
        arg = np.sqrt(code.n / v) * margin
    # rho == 0: zero dispersion, the sign of the margin decides
    arg = np.where(v > 0.0, arg, np.where(margin > 0, np.inf, np.where(margin < 0, -np.inf, 0.0)))
    arg = np.clip(arg, -40.0, 40.0)
    return _out(np.clip(np.asarray(q_func(arg)), 0.0, 1.0))
