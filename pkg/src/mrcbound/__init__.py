"""Finite-blocklength packet-error-rate bounds for L-branch MRC over
i.i.d. Rayleigh fading, with a Monte Carlo reference simulator.

    >>> from mrcbound import CodeParams, LinkConfig, minimize_bound
    >>> res = minimize_bound(CodeParams(n=4096, R=0.5), LinkConfig(L=4, snr_db=3.0))
    >>> round(res.per_bound, 6)
    0.000161
"""

from .finite_blocklength import (
    V_BAR,
    CodeParams,
    achievable_rate,
    conditional_error_prob,
    dispersion,
    rate_lower_bound,
    snr_threshold,
)
from .montecarlo import Estimator, PerEstimate, SimSpec, estimate_per, sample_mrc_snr
from .numerics import DomainError, NumericOverflowError, log_factorial, q_func, q_inv, reg_lower_gamma
from .optimizer import BoundResult, minimize_bound, per_asymptotic, per_objective
from .outage import (
    LinkConfig,
    OutageModelKind,
    beta,
    chernoff_bound,
    corrected_bound,
    correction_term,
    outage_exact,
    outage_probability,
    outage_series_leading,
)
from .sweep import (
    Axis,
    Output,
    PlanFree,
    PlanQuery,
    PlanResult,
    PowerMode,
    SimOverrides,
    SweepSpec,
    SweepTable,
    plan_parameters,
    preset,
    run_sweep,
)

__version__ = "0.1.0"
