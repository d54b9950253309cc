"""Monte Carlo estimate of the packet error rate.

Channels are drawn per trial, combined by MRC, and each trial fails with
the normal-approximation error probability at its SNR. No waveform or
channel code is simulated.

Reproducibility: trials are cut into fixed blocks of ``BLOCK_SIZE``; block
``b`` draws from a Philox stream keyed by ``SeedSequence(seed,
spawn_key=(b,))``. Shards are contiguous block ranges and per-block
statistics are merged in block order, so the result is bit-identical for
any shard count.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .finite_blocklength import CodeParams, conditional_error_prob
from .numerics import DomainError
from .outage import LinkConfig

__all__ = [
    "Estimator",
    "SimSpec",
    "PerEstimate",
    "BLOCK_SIZE",
    "block_rng",
    "sample_mrc_snr",
    "simulate_block",
    "estimate_per",
]

BLOCK_SIZE = 1 << 16
Z_95 = 1.959963984540054


class Estimator(enum.Enum):
    ANALYTIC_AVERAGE = "analytic"
    BERNOULLI = "bernoulli"


@dataclass(frozen=True)
class SimSpec:
    link: LinkConfig
    code: CodeParams
    trials: int = 1_000_000
    seed: int = 0
    estimator: Estimator = Estimator.ANALYTIC_AVERAGE
    shards: int = 1
    use_vbar: bool = False

    def __post_init__(self):
        if int(self.trials) != self.trials or self.trials < 1:
            raise DomainError("trials must be a positive integer")
        if int(self.shards) != self.shards or self.shards < 1:
            raise DomainError("shards must be a positive integer")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "estimator", Estimator(self.estimator))


@dataclass(frozen=True)
class PerEstimate:
    per: float
    ci_halfwidth_95: float
    trials: int
    seed: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def block_rng(seed: int, block: int) -> np.random.Generator:
    """Philox generator for one block of trials."""
    ss = np.random.SeedSequence(seed, spawn_key=(block,))
    return np.random.Generator(np.random.Philox(ss))


def sample_mrc_snr(rng: np.random.Generator, link: LinkConfig, size=None):
    """Post-MRC SNR ``(P/N0) * sum_l |h_l|^2`` for i.i.d. Rayleigh branches.

    Branch gains are exponential with mean ``sigma_h2``, drawn by inverse
    CDF from uniforms on (0, 1].
    """
    shape = (link.L,) if size is None else (link.L, size)
    u = 1.0 - rng.random(shape)
    gains = -link.sigma_h2 * np.log(u)
    rho = link.snr * gains.sum(axis=0)
    return float(rho) if size is None else rho


def simulate_block(rng: np.random.Generator, link: LinkConfig, code: CodeParams,
                   m: int, use_vbar: bool = False):
    """Per-trial error probabilities and Bernoulli outcomes for ``m`` trials.

    Both come from the same channel draws, so the two estimators can be
    compared on identical samples.
    """
    rho = sample_mrc_snr(rng, link, m)
    eps = np.asarray(conditional_error_prob(rho, code, use_vbar=use_vbar))
    hits = rng.random(m) < eps
    return eps, hits


def _block_stats(spec: SimSpec, block: int, m: int):
    rng = block_rng(spec.seed, block)
    eps, hits = simulate_block(rng, spec.link, spec.code, m, spec.use_vbar)
    x = eps if spec.estimator is Estimator.ANALYTIC_AVERAGE else hits.astype(float)
    mean = float(x.mean())
    m2 = float(((x - mean) ** 2).sum())
    return m, mean, m2


def _blocks(trials: int):
    n_full, rem = divmod(trials, BLOCK_SIZE)
    sizes = [BLOCK_SIZE] * n_full
    if rem:
        sizes.append(rem)
    return sizes


def estimate_per(spec: SimSpec) -> PerEstimate:
    """Packet error rate averaged over fading, with a 95% normal CI.

    ``ANALYTIC_AVERAGE`` averages the conditional error probability;
    ``BERNOULLI`` counts simulated decoding failures. The Bernoulli CI is
    rough when fewer than about 10 errors are observed.
    """
    sizes = _blocks(spec.trials)
    n_shards = min(spec.shards, len(sizes))
    bounds = np.linspace(0, len(sizes), n_shards + 1).astype(int)

    def run_shard(k):
        return [_block_stats(spec, b, sizes[b]) for b in range(bounds[k], bounds[k + 1])]

    if n_shards == 1:
        per_shard = [run_shard(0)]
    else:
        with ThreadPoolExecutor(max_workers=n_shards) as pool:
            per_shard = list(pool.map(run_shard, range(n_shards)))
    stats = [s for shard in per_shard for s in shard]

    # Chan et al. pairwise merge, always in block order
    n_tot, mean, m2 = stats[0]
    for m, mean_b, m2_b in stats[1:]:
        n_new = n_tot + m
        delta = mean_b - mean
        mean += delta * m / n_new
        m2 += m2_b + delta * delta * n_tot * m / n_new
        n_tot = n_new
    var = m2 / (n_tot - 1) if n_tot > 1 else math.inf
    half = Z_95 * math.sqrt(var / n_tot) if math.isfinite(var) else math.inf
    return PerEstimate(per=min(max(mean, 0.0), 1.0), ci_halfwidth_95=half,
                       trials=spec.trials, seed=spec.seed)
