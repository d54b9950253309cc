import math

import numpy as np
import pytest
from scipy import integrate

from mrcbound.numerics import DomainError
from mrcbound.outage import (
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

Z_GRID = np.round(np.arange(0.01, 0.96, 0.01), 2)


def erlang_cdf_quad(L, z):
    # density of Z_L = Gamma(L, 1/L)
    dens = lambda t: L**L * t ** (L - 1) * math.exp(-L * t) / math.factorial(L - 1)
    return integrate.quad(dens, 0, z, epsabs=1e-15, epsrel=1e-13)[0]


class TestBeta:
    def test_unity(self):
        assert beta(LinkConfig(1, 1.0, 0.0)) == 1.0

    def test_fig2_config(self):
        assert beta(LinkConfig(4, 1.0, 3.0)) == pytest.approx(4 * 10**0.3, rel=1e-15)
        assert beta(LinkConfig(4, 1.0, 3.0)) == pytest.approx(7.981049, abs=1e-6)

    def test_cancel(self):
        assert beta(LinkConfig(2, 0.5, 0.0)) == 1.0

    def test_invalid(self):
        with pytest.raises(DomainError):
            LinkConfig(0)
        with pytest.raises(DomainError):
            LinkConfig(2, sigma_h2=0.0)


class TestExact:
    def test_exponential(self):
        assert outage_exact(1, 0.1) == pytest.approx(0.0951626, abs=1e-7)

    def test_zero(self):
        for L in (1, 4, 9):
            assert outage_exact(L, 0.0) == 0.0

    def test_quadrature_oracle(self):
        assert outage_exact(4, 0.064113) == pytest.approx(erlang_cdf_quad(4, 0.064113), abs=1e-9)

    def test_closed_form_L1(self):
        z = np.linspace(0, 10, 101)
        assert np.allclose(outage_exact(1, z), -np.expm1(-z), rtol=0, atol=1e-12)

    def test_closed_form_L2(self):
        z = np.linspace(0, 10, 101)
        assert np.allclose(outage_exact(2, z), 1 - np.exp(-2 * z) * (1 + 2 * z), rtol=0, atol=1e-12)

    def test_decreasing_in_L_below_one(self):
        for z in (0.05, 0.3, 0.9):
            vals = [outage_exact(L, z) for L in range(1, 11)]
            assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_increasing_in_z(self):
        assert np.all(np.diff(outage_exact(3, np.linspace(0, 5, 200))) > 0)


class TestChernoff:
    def test_near_one(self):
        for L in (1, 4, 10):
            assert chernoff_bound(L, 1 - 1e-12) > 1 - 1e-9

    def test_values(self):
        assert chernoff_bound(1, 0.1) == pytest.approx(0.1 * math.exp(0.9), rel=1e-14)
        assert chernoff_bound(1, 0.1) == pytest.approx(0.245960, abs=1e-6)
        assert chernoff_bound(4, 0.5) == pytest.approx(0.0625 * math.e**2, rel=1e-14)
        assert chernoff_bound(4, 0.5) == pytest.approx(0.461816, abs=1e-6)

    def test_increasing(self):
        assert np.all(np.diff(chernoff_bound(5, np.linspace(0, 0.999, 300))) > 0)

    def test_domain(self):
        with pytest.raises(DomainError):
            chernoff_bound(2, 1.0)


class TestCorrection:
    def test_values(self):
        assert correction_term(1) == pytest.approx(math.exp(-1), rel=1e-15)
        assert correction_term(2) == pytest.approx(math.sqrt(2) / math.e, rel=1e-14)
        assert correction_term(2) == pytest.approx(0.520260, abs=1e-6)
        assert correction_term(4) == pytest.approx(4 / math.e * 24 ** -0.25, rel=1e-14)
        assert correction_term(4) == pytest.approx(0.664840, abs=1e-5)

    def test_below_exp_bound(self):
        # equality at L = 1, where c_1 = 1/e exactly
        assert correction_term(1) == pytest.approx(math.exp(-1), rel=1e-15)
        for L in range(2, 200):
            assert correction_term(L) < math.exp(-1 / L) <= 1


class TestCorrected:
    def test_zero(self):
        assert corrected_bound(3, 0.0) == 0.0

    def test_L1(self):
        c = math.exp(-1)
        expected = c * 0.1 * math.exp(1 - c * 0.1)
        assert corrected_bound(1, 0.1) == pytest.approx(expected, rel=1e-14)
        assert corrected_bound(1, 0.1) == pytest.approx(0.096388, abs=1e-6)
        assert corrected_bound(1, 0.1) > outage_exact(1, 0.1)

    def test_L4(self):
        assert corrected_bound(4, 0.064113) == pytest.approx(1.520e-4, rel=5e-3)

    def test_extrapolated_region(self):
        L = 3
        z = 0.99 / correction_term(L)
        assert z > 1
        assert 0 < corrected_bound(L, z) <= 1

    def test_domain(self):
        with pytest.raises(DomainError):
            corrected_bound(1, 1 / correction_term(1))

    @pytest.mark.parametrize("L", range(1, 11))
    def test_ordering_grid(self, L):
        b = corrected_bound(L, Z_GRID)
        u = chernoff_bound(L, Z_GRID)
        exact = outage_exact(L, Z_GRID)
        assert np.all(b < u)
        bad = Z_GRID[exact > b]
        assert bad.size == 0, f"corrected bound below exact CDF at L={L}, z={bad}"


class TestLimits:
    @pytest.mark.parametrize("L", range(1, 7))
    def test_corrected_ratio_to_one(self, L):
        dev = [abs(corrected_bound(L, z) / outage_exact(L, z) - 1) for z in (1e-2, 1e-3, 1e-4)]
        assert dev[1] <= 0.02
        assert dev[0] > dev[1] > dev[2]

    @pytest.mark.parametrize("L", range(1, 7))
    def test_series_ratio_to_one(self, L):
        dev = [abs(outage_series_leading(L, z) / outage_exact(L, z) - 1) for z in (1e-2, 1e-3, 1e-4)]
        assert dev[1] <= 0.02
        assert dev[0] > dev[1] > dev[2]

    def test_series_values(self):
        assert outage_series_leading(1, 0.01) == pytest.approx(0.01, rel=1e-14)
        assert outage_series_leading(2, 0.01) == pytest.approx(2e-4, rel=1e-13)
        assert outage_series_leading(4, 1e-3) == pytest.approx(4e-3**4 / 24, rel=1e-13)


def test_dispatch():
    for kind, func in [
        (OutageModelKind.EXACT, outage_exact),
        (OutageModelKind.CHERNOFF_U, chernoff_bound),
        (OutageModelKind.CORRECTED_B, corrected_bound),
        (OutageModelKind.ASYMPTOTIC_SERIES, outage_series_leading),
    ]:
        assert outage_probability(kind, 3, 0.2) == func(3, 0.2)
    assert outage_probability("corrected", 3, 0.2) == corrected_bound(3, 0.2)
