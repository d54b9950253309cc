"""Packet-error-rate upper bounds obtained by minimizing

    eps + (1 - eps) * F(tau(eps) / beta)

over the nominal error probability ``eps``, where ``F`` is one of the
outage models in :mod:`mrcbound.outage`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .finite_blocklength import V_BAR, CodeParams, snr_threshold
from .numerics import DomainError, q_inv
from .outage import LinkConfig, OutageModelKind, beta, correction_term, outage_exact, outage_probability

__all__ = [
    "BoundResult",
    "per_objective",
    "minimize_bound",
    "per_asymptotic",
    "golden_section",
    "EPS_LO",
    "EPS_HI",
]

EPS_LO = 1e-12
EPS_HI = 1.0 - 1e-6
GRID_POINTS = 200
# the search walks below EPS_LO when the minimum sits on the lower edge
EPS_FLOOR = 1e-300
GOLDEN_RTOL = 1e-4

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BoundResult:
    eps_star: float
    per_bound: float
    tau_star: float
    outage_at_star: float
    model: OutageModelKind
    evaluations: int
    degenerate: bool = False

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["model"] = self.model.value
        return d


def _outage_clipped(model, L, z):
    """Outage model at ``z`` with out-of-domain points pinned to 1.

    Returns ``(values, flagged)`` where ``flagged`` marks the pinned points.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    model = OutageModelKind(model)
    if model is OutageModelKind.CORRECTED_B:
        ok = correction_term(L) * z < 1.0
    elif model is OutageModelKind.CHERNOFF_U:
        ok = z < 1.0
    else:
        ok = np.ones_like(z, dtype=bool)
    vals = np.ones_like(z)
    if np.any(ok):
        vals[ok] = outage_probability(model, L, z[ok])
    # the leading series term is not a probability for large z
    return np.minimum(vals, 1.0), ~ok


def _objective_log_eps(log_eps, code: CodeParams, link: LinkConfig, model):
    """Vectorized objective as a function of ``ln eps``."""
    log_eps = np.atleast_1d(np.asarray(log_eps, dtype=float))
    eps = np.exp(log_eps)
    exponent = code.R + math.sqrt(V_BAR / code.n) * np.asarray(q_inv(eps))
    tau = np.maximum(np.expm1(math.log(2.0) * exponent), 0.0)
    out, flagged = _outage_clipped(model, link.L, tau / beta(link))
    return eps + (1.0 - eps) * out, tau, out, flagged


def per_objective(eps: float, code: CodeParams, link: LinkConfig,
                  model: OutageModelKind = OutageModelKind.CORRECTED_B) -> float:
    """Upper bound on the packet error rate at a fixed nominal error ``eps``.

    Outage models evaluated outside their domain (``c_L z >= 1`` for the
    corrected bound, ``z >= 1`` for the Chernoff bound) are pinned to 1.
    """
    if not (0.0 < eps < 1.0):
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    tau = snr_threshold(code, eps)
    out, _ = _outage_clipped(model, link.L, tau / beta(link))
    return float(eps + (1.0 - eps) * out[0])


def golden_section(f, a: float, b: float, xtol: float, maxiter: int = 200):
    """Derivative-free minimization of ``f`` on ``[a, b]``.

    Returns ``(x, fx, evaluations)`` for the best point seen.
    """
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    while abs(b - a) > xtol and evals < maxiter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        evals += 1
    if fc <= fd:
        return c, fc, evals
    return d, fd, evals


def _argmin_first(values: np.ndarray) -> int:
    # smallest index among values tied with the minimum
    vmin = values.min()
    tied = np.nonzero(values <= vmin + 1e-12 * max(vmin, 1e-300))[0]
    return int(tied[0])


def minimize_bound(code: CodeParams, link: LinkConfig,
                   model: OutageModelKind = OutageModelKind.CORRECTED_B) -> BoundResult:
    """Minimize the error-rate bound over the nominal error probability.

    A log-spaced grid on ``[1e-12, 1 - 1e-6]`` brackets the minimum and
    golden-section search on ``ln eps`` refines it. When the best grid
    point is the lower edge, the grid is extended down a decade block at
    a time (to 1e-300) because at high SNR the objective keeps falling
    with ``eps``.
    """
    model = OutageModelKind(model)

    def obj(le):
        return float(_objective_log_eps(le, code, link, model)[0][0])

    grid = np.linspace(math.log(EPS_LO), math.log(EPS_HI), GRID_POINTS)
    vals = _objective_log_eps(grid, code, link, model)[0]
    evals = grid.size
    i = _argmin_first(vals)
    floor = math.log(EPS_FLOOR)
    step = grid[1] - grid[0]
    while i == 0 and grid[0] > floor:
        lower = grid[0] - step * np.arange(40, 0, -1)
        lower = lower[lower >= floor]
        if lower.size == 0:
            break
        lower_vals = _objective_log_eps(lower, code, link, model)[0]
        evals += lower.size
        grid = np.concatenate([lower, grid])
        vals = np.concatenate([lower_vals, vals])
        i = _argmin_first(vals)

    if vals[i] >= 1.0:
        eps = math.exp(grid[i])
        return BoundResult(eps_star=eps, per_bound=1.0, tau_star=snr_threshold(code, eps),
                           outage_at_star=1.0, model=model, evaluations=evals, degenerate=True)

    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    x, fx, n_gs = golden_section(obj, lo, hi, xtol=GOLDEN_RTOL * max(abs(grid[i]), 1.0))
    evals += n_gs
    if vals[i] < fx:
        x = grid[i]
    val, tau, out, flagged = _objective_log_eps(x, code, link, model)
    return BoundResult(
        eps_star=math.exp(x),
        per_bound=float(val[0]),
        tau_star=float(tau[0]),
        outage_at_star=float(out[0]),
        model=model,
        evaluations=evals + 1,
        degenerate=bool(flagged[0]),
    )


def per_asymptotic(code: CodeParams, link: LinkConfig) -> float:
    """Error rate of a capacity-achieving code as n -> inf: ``Pr(rho < 2^R - 1)``."""
    return float(outage_exact(link.L, math.expm1(code.R * math.log(2.0)) / beta(link)))
