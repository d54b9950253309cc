"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line (collected again in
the terminal summary) and checks its runtime budget. Run on its own with

    pytest tests/test_acceptance.py -v
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest
from scipy import integrate, stats

from conftest import grid_objective, random_configs
from mrcbound import (
    CodeParams,
    LinkConfig,
    beta,
    chernoff_bound,
    corrected_bound,
    minimize_bound,
    outage_exact,
    per_asymptotic,
    q_func,
    q_inv,
    reg_lower_gamma,
)
from mrcbound.montecarlo import BLOCK_SIZE, Estimator, SimSpec, block_rng, estimate_per, sample_mrc_snr
from mrcbound.sweep import SimOverrides, preset, run_sweep

# see test_optimizer.FIG2_GRID_ORACLE
FIG2_GRID_ORACLE = 1.6099800441873936e-4
ACCEPTANCE_SIM = SimOverrides(trials=10_000_000, seed=0, estimator=Estimator.ANALYTIC_AVERAGE, shards=4)

RESULTS = []


@contextmanager
def criterion(number, title, budget_s):
    t0 = time.perf_counter()
    detail = {}
    try:
        yield detail
        elapsed = time.perf_counter() - t0
        assert elapsed < budget_s, f"runtime {elapsed:.1f}s over budget {budget_s}s"
    except AssertionError as exc:
        line = f"[FAIL] {number}. {title}: {exc}".splitlines()[0]
        RESULTS.append(line)
        print(line)
        raise
    extra = detail.get("note", "")
    line = f"[PASS] {number}. {title} ({time.perf_counter() - t0:.2f}s){' ' + extra if extra else ''}"
    RESULTS.append(line)
    print(line)


def test_1_bound_order():
    with criterion(1, "exact <= corrected <= chernoff on L=1..10, z=0.01..0.95", 1.0):
        z = np.round(np.arange(1, 96) * 0.01, 2)
        violations = []
        for L in range(1, 11):
            ex, co, ch = outage_exact(L, z), corrected_bound(L, z), chernoff_bound(L, z)
            for zi, a, b, c in zip(z, ex, co, ch):
                if not (a <= b <= c):
                    violations.append((L, zi, a, b, c))
        assert not violations, f"violations (L, z, exact, B, U): {violations[:5]}"


def test_2_limit():
    with criterion(2, "B_L/Pr(Z_L<=z) -> 1 as z -> 0, L=1..6", 1.0) as d:
        worst = 0.0
        for L in range(1, 7):
            dev = [abs(corrected_bound(L, z) / outage_exact(L, z) - 1) for z in (1e-2, 1e-3, 1e-4)]
            assert dev[1] <= 0.02, f"L={L}: deviation {dev[1]:.4f} at z=1e-3"
            assert dev[0] > dev[1] > dev[2], f"L={L}: deviations not shrinking {dev}"
            worst = max(worst, dev[1])
        d["note"] = f"worst deviation at z=1e-3: {worst:.4f}"


def test_3_optimizer_oracle():
    with criterion(3, "optimizer vs eps-grid oracles", 10.0) as d:
        eps = np.geomspace(1e-12, 1 - 1e-6, 2000)
        worst = 0.0
        for n, R, L, snr in random_configs(30, seed=2024):
            ref = grid_objective(eps, n, R, L, snr, "corrected").min()
            got = minimize_bound(CodeParams(n, R), LinkConfig(L, 1.0, snr)).per_bound
            assert got <= ref * 1.001, f"config {(n, R, L, snr)}: {got} vs grid {ref}"
            worst = max(worst, got / ref - 1)
        anchor = minimize_bound(CodeParams(4096, 0.5), LinkConfig(4, 1.0, 3.0)).per_bound
        assert abs(anchor / FIG2_GRID_ORACLE - 1) <= 0.02, f"anchor {anchor} vs {FIG2_GRID_ORACLE}"
        d["note"] = f"anchor {anchor:.6e}, worst excess over grid {worst:+.2e}"


def _bound_sim(name):
    table = run_sweep(preset(name, ACCEPTANCE_SIM))
    return table, table.column("bound_corrected"), table.column("simulation")


@pytest.mark.slow
def test_4_bound_vs_simulation():
    with criterion(4, "simulation <= corrected bound on fig2/fig3/fig4, fig2 ratio -> 1", 600.0) as d:
        ratios = {}
        for name in ("fig2", "fig3", "fig4"):
            table, bound, sim = _bound_sim(name)
            if name == "fig2":
                rel_ci = table.column("simulation_ci95") / sim
            axis = table.config["axis"]
            for row, b, s in zip(table.rows, bound, sim):
                assert s <= b, f"{name} {axis}={row[axis]}: simulation {s} > bound {b}"
            r = bound / sim
            assert np.all(np.isfinite(r)), f"{name}: non-finite bound/simulation ratio"
            ratios[name] = r
        r2 = ratios["fig2"]
        up = np.nonzero(np.diff(r2) >= 0)[0]
        assert up.size == 0, (
            "fig2 ratio not decreasing in R at "
            + ", ".join(f"R={table_r:.2f} (ratio {r2[i]:.2f} -> {r2[i + 1]:.2f}, sim CI95/est {rel_ci[i]:.0%})"
                        for i, table_r in ((i, 0.1 + 0.05 * i) for i in up))
        )
        assert np.all(r2 >= 1)
        d["note"] = f"fig2 ratio {r2[0]:.2f} -> {r2[-1]:.3f}"


@pytest.mark.slow
def test_5_blocklength_gap():
    with criterion(5, "bound/simulation gap at n=2^7 >= 2x gap at n=2^15", 300.0) as d:
        table, bound, sim = _bound_sim("fig5")
        n = table.column("n")
        gap = bound / sim
        g_small, g_large = gap[n == 2**7][0], gap[n == 2**15][0]
        assert g_small >= 2 * g_large, f"gaps {g_small:.3f} vs {g_large:.3f}"
        d["note"] = f"gap {g_small:.2f} at 2^7 vs {g_large:.3f} at 2^15"


def test_6_asymptotic_consistency():
    with criterion(6, "exact-model bound at n=2^20 within 5% of asymptotic PER", 1.0) as d:
        link = LinkConfig(4, 1.0, 3.0)
        b = minimize_bound(CodeParams(2**20, 0.5), link, "exact").per_bound
        a = per_asymptotic(CodeParams(2**20, 0.5), link)
        rel = b / a - 1
        d["note"] = f"relative gap {rel:.4f}"
        assert abs(rel) <= 0.05, f"bound {b:.6e} vs asymptotic {a:.6e}, relative gap {rel:.4f}"


def test_7_statistical_fidelity():
    with criterion(7, "KS test of sampled SNR, shard invariance", 30.0) as d:
        pvals = []
        for L in (1, 2, 4, 8):
            link = LinkConfig(L, 1.0, 3.0)
            rho = sample_mrc_snr(block_rng(12345, L), link, 100_000)
            p = stats.kstest(rho, lambda x: outage_exact(L, np.maximum(x, 0) / beta(link))).pvalue
            assert p > 0.01, f"KS rejects at L={L} (p={p:.4f})"
            pvals.append(p)
        base = dict(link=LinkConfig(4, 1.0, 3.0), code=CodeParams(4096, 0.5), trials=8 * BLOCK_SIZE + 17, seed=99)
        for est in Estimator:
            ref = estimate_per(SimSpec(**base, estimator=est, shards=1))
            for shards in (2, 3, 8):
                assert estimate_per(SimSpec(**base, estimator=est, shards=shards)) == ref
        d["note"] = f"min KS p-value {min(pvals):.3f}"


def test_8_numerics():
    with criterion(8, "numerics: Q round trip, incomplete gamma, closed forms", 5.0):
        for x in np.linspace(-6, 6, 25):
            assert abs(q_inv(q_func(x)) - x) <= 1e-8
        for s in range(1, 11):
            for x in (0.01, 0.1, 1.0, float(s), 10.0 * s):
                dens = lambda t: t ** (s - 1) * math.exp(-t) / math.factorial(s - 1)
                ref = integrate.quad(dens, 0, x, epsabs=1e-14, limit=200)[0]
                assert abs(reg_lower_gamma(s, x) - ref) <= 1e-9, (s, x)
        z = np.linspace(0, 10, 201)
        assert np.max(np.abs(outage_exact(1, z) + np.expm1(-z))) <= 1e-12
        assert np.max(np.abs(outage_exact(2, z) - (1 - np.exp(-2 * z) * (1 + 2 * z)))) <= 1e-12
