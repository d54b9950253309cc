"""Outage probability of L-branch MRC over i.i.d. Rayleigh fading.

With ``beta = L * snr * sigma_h2`` the post-combining SNR is
``rho = beta * Z_L`` where ``Z_L`` is a unit-mean Gamma(L, 1/L) variable.
The functions below work on ``z = tau / beta`` and return
``Pr(Z_L < z)`` or one of its closed-form surrogates.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .numerics import DomainError, log_factorial, reg_lower_gamma

__all__ = [
    "LinkConfig",
    "OutageModelKind",
    "beta",
    "outage_exact",
    "chernoff_bound",
    "correction_term",
    "corrected_bound",
    "outage_series_leading",
    "outage_probability",
]


@dataclass(frozen=True)
class LinkConfig:
    """Diversity order, per-branch channel power and per-branch SNR in dB."""

    L: int
    sigma_h2: float = 1.0
    snr_db: float = 0.0

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 1:
            raise DomainError(f"number of bins must be a positive integer, got {self.L}")
        if not (self.sigma_h2 > 0 and math.isfinite(self.sigma_h2)):
            raise DomainError(f"channel power must be positive, got {self.sigma_h2}")
        if not math.isfinite(self.snr_db):
            raise DomainError("snr_db must be finite")

    @property
    def snr(self) -> float:
        return 10.0 ** (self.snr_db / 10.0)


class OutageModelKind(enum.Enum):
    EXACT = "exact"
    CHERNOFF_U = "chernoff"
    CORRECTED_B = "corrected"
    ASYMPTOTIC_SERIES = "asymptotic"


def beta(link: LinkConfig) -> float:
    """Mean post-combining SNR, ``L * P/N0 * sigma_h2``."""
    return link.L * link.snr * link.sigma_h2


def _check_L(L):
    if int(L) != L or L < 1:
        raise DomainError(f"L must be a positive integer, got {L}")
    return int(L)


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def _log_pow_form(L, cz):
    # L * (ln(cz) + 1 - cz), with cz == 0 mapped to -inf
    with np.errstate(divide="ignore"):
        return L * (np.log(cz) + 1.0 - cz)


def outage_exact(L: int, z):
    """``Pr(Z_L < z)``, the regularized incomplete gamma at ``L * z``."""
    L = _check_L(L)
    z = np.asarray(z, dtype=float)
    if np.any(~(z >= 0.0)):
        raise DomainError("z must be non-negative")
    return reg_lower_gamma(L, L * z)


def chernoff_bound(L: int, z):
    """Chernoff bound ``(z e^{1-z})^L`` on ``Pr(Z_L < z)`` for ``0 <= z < 1``."""
    L = _check_L(L)
    z = np.asarray(z, dtype=float)
    if np.any(~(z >= 0.0)) or np.any(z >= 1.0):
        raise DomainError("Chernoff bound is defined for 0 <= z < 1")
    return _out(np.exp(_log_pow_form(L, z)))


def correction_term(L: int) -> float:
    """``c_L = L e^{-1} (L!)^{-1/L}``; makes the corrected bound exact as z -> 0."""
    L = _check_L(L)
    return math.exp(math.log(L) - 1.0 - log_factorial(L) / L)


def corrected_bound(L: int, z):
    """``(c_L z e^{1 - c_L z})^L``.

    Accepted for ``c_L z < 1``, which covers ``[0, 1)`` and extends a bit
    past 1 since ``c_L < 1``. Whether this dominates the exact outage is
    only checked numerically, never assumed.
    """
    L = _check_L(L)
    z = np.asarray(z, dtype=float)
    cz = correction_term(L) * z
    if np.any(~(z >= 0.0)) or np.any(cz >= 1.0):
        raise DomainError("corrected bound requires z >= 0 and c_L * z < 1")
    return _out(np.exp(_log_pow_form(L, cz)))


def outage_series_leading(L: int, z):
    """Leading small-z term ``(L z)^L / L!`` of the exact outage."""
    L = _check_L(L)
    z = np.asarray(z, dtype=float)
    if np.any(~(z >= 0.0)):
        raise DomainError("z must be non-negative")
    with np.errstate(divide="ignore"):
        log_val = L * np.log(L * z) - log_factorial(L)
    return _out(np.exp(log_val))


_MODELS = {
    OutageModelKind.EXACT: outage_exact,
    OutageModelKind.CHERNOFF_U: chernoff_bound,
    OutageModelKind.CORRECTED_B: corrected_bound,
    OutageModelKind.ASYMPTOTIC_SERIES: outage_series_leading,
}


def outage_probability(model: OutageModelKind, L: int, z):
    """Dispatch to the outage model selected by ``model``."""
    return _MODELS[OutageModelKind(model)](L, z)
