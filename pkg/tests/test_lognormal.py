"""Terminal-law tests: moments, transforms, the conditional median and its
equal-tail defining property, checked against quadrature and bisection."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from medianbs import (
    DegenerateLawError, DomainError, MarketParams, TailUnderflowError,
    TerminalDistribution, ValidationError, norm_pdf, terminal_distribution,
)
from .oracles import conditional_median_bisect

EXAMPLE = MarketParams(spot=1.5, strike=0.2, rate=0.0, vol=1.0, tau=1.0)
EXAMPLE_LOCATION = -0.094534891891835618  # log(1.5) - 0.5, mpmath


@pytest.fixture
def example_dist():
    return terminal_distribution(EXAMPLE)


class TestMarketParams:
    def test_valid(self):
        p = MarketParams(spot=2.0, strike=0.0, rate=-0.1, vol=0.0, tau=0.0)
        assert p.sigma_sqrt_tau == 0.0

    @pytest.mark.parametrize("kwargs,field", [
        (dict(spot=0.0), "spot"),
        (dict(spot=-1.0), "spot"),
        (dict(strike=-0.5), "strike"),
        (dict(vol=-0.2), "vol"),
        (dict(tau=-1.0), "tau"),
        (dict(rate=float("inf")), "rate"),
        (dict(spot=float("nan")), "spot"),
    ])
    def test_invalid_fields_are_named(self, kwargs, field):
        base = dict(spot=1.0, strike=1.0, rate=0.0, vol=0.2, tau=1.0)
        base.update(kwargs)
        with pytest.raises(ValidationError) as err:
            MarketParams(**base)
        assert field in err.value.fields


class TestTerminalDistribution:
    def test_example_location_scale(self, example_dist):
        assert example_dist.location == pytest.approx(EXAMPLE_LOCATION, abs=1e-15)
        assert example_dist.scale == 1.0

    def test_tau_zero_is_point_mass_at_spot(self):
        d = terminal_distribution(MarketParams(spot=2.5, strike=1.0, rate=0.3,
                                               vol=0.8, tau=0.0))
        assert d.is_point_mass
        assert d.median == pytest.approx(2.5, rel=1e-15)

    def test_vol_zero_grows_like_a_bond(self):
        d = terminal_distribution(MarketParams(spot=1.0, strike=1.0, rate=0.2,
                                               vol=0.0, tau=2.0))
        assert d.is_point_mass
        assert d.median == pytest.approx(math.exp(0.4), rel=1e-15)

    def test_invalid_scale_rejected(self):
        with pytest.raises(ValidationError):
            TerminalDistribution(location=0.0, scale=-1.0)


class TestPdf:
    def test_integrates_to_one(self, example_dist):
        total, _ = quad(example_dist.pdf, 1e-12, np.inf, limit=200)
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_mode(self, example_dist):
        mode = math.exp(example_dist.location - example_dist.scale**2)
        grid = mode * np.linspace(0.5, 1.5, 401)
        assert example_dist.pdf(mode) >= example_dist.pdf(grid).max() - 1e-12

    def test_value_at_median(self, example_dist):
        at_median = math.exp(example_dist.location)
        assert example_dist.pdf(at_median) == pytest.approx(
            norm_pdf(0.0) / at_median, rel=1e-14)

    def test_domain_errors(self, example_dist):
        with pytest.raises(DomainError):
            example_dist.pdf(0.0)
        with pytest.raises(DomainError):
            example_dist.pdf(-1.0)

    def test_point_mass_has_no_density(self):
        d = TerminalDistribution(location=0.0, scale=0.0)
        with pytest.raises(DegenerateLawError):
            d.pdf(1.0)


class TestCdfQuantile:
    def test_median_is_exp_location(self, example_dist):
        assert example_dist.quantile(0.5) == pytest.approx(
            math.exp(example_dist.location), rel=1e-15)

    def test_example_cdf_at_strike(self, example_dist):
        # 1 - Phi(d2), frozen from the mpmath oracle
        assert float(example_dist.cdf(0.2)) == pytest.approx(
            0.064898482668329610, abs=1e-15)

    def test_round_trip_at_spec_point(self, example_dist):
        assert example_dist.quantile(0.53245) == pytest.approx(
            0.98698059311932413, rel=1e-13)
        p = example_dist.cdf(example_dist.quantile(0.53245))
        assert float(p) == pytest.approx(0.53245, rel=1e-12)

    @pytest.mark.parametrize("scale", [0.25, 1.0, 2.0])
    def test_inversion_p_direction(self, scale):
        d = TerminalDistribution(location=0.3, scale=scale)
        q = np.logspace(-10, np.log10(0.5), 60)
        p = np.unique(np.concatenate([q, 1.0 - q]))
        back = d.cdf(d.quantile(p))
        assert np.all(np.abs(back - p) <= 1e-9 * np.maximum(p, 1.0 - p))

    @pytest.mark.parametrize("scale", [0.25, 1.0, 2.0])
    def test_inversion_x_direction(self, scale):
        # quantile(cdf(x)) = x to 1e-9 relative wherever the stored cdf value
        # retains enough tail information (p <= 1 - 1e-7; nearer 1 the
        # probability rounds onto the 2^-53 grid and x cannot be recovered).
        d = TerminalDistribution(location=0.3, scale=scale)
        p = np.concatenate([np.logspace(-10, -1, 30),
                            1.0 - np.logspace(-7, -1, 30)])
        x = d.quantile(np.sort(p))
        back = d.quantile(d.cdf(x))
        assert np.abs(back / x - 1.0).max() <= 1e-9

    def test_domain_errors(self, example_dist):
        with pytest.raises(DomainError):
            example_dist.cdf(0.0)
        with pytest.raises(DomainError):
            example_dist.quantile(1.0)

    def test_point_mass_rejects_transforms(self):
        d = TerminalDistribution(location=0.0, scale=0.0)
        with pytest.raises(DegenerateLawError):
            d.cdf(1.0)
        with pytest.raises(DegenerateLawError):
            d.quantile(0.5)


class TestConditionalMedianAbove:
    def test_example_against_bisection(self, example_dist):
        got = example_dist.conditional_median_above(0.2)
        ref = conditional_median_bisect(example_dist.cdf, 0.2, hi=100.0)
        assert got == pytest.approx(ref, rel=1e-12)
        assert got == pytest.approx(0.98697870995379580, rel=1e-13)

    def test_zero_strike_gives_unconditional_median(self, example_dist):
        assert example_dist.conditional_median_above(0.0) == pytest.approx(
            math.exp(example_dist.location), rel=1e-14)

    @pytest.mark.parametrize("k", [0.1, 0.5, 1.0, 2.0, 5.0])
    def test_equal_tail_property(self, example_dist, k):
        m = example_dist.conditional_median_above(k)
        left = float(example_dist.cdf(m)) - float(example_dist.cdf(k))
        right = 1.0 - float(example_dist.cdf(m))
        assert m > k
        assert abs(left - right) <= 1e-10

    def test_nondecreasing_in_strike(self, example_dist):
        ks = np.linspace(0.0, 8.0, 100)
        ms = [example_dist.conditional_median_above(float(k)) for k in ks]
        assert np.all(np.diff(ms) >= 0)

    def test_tail_underflow(self, example_dist):
        with pytest.raises(TailUnderflowError):
            example_dist.conditional_median_above(1e17)

    def test_point_mass_rejected(self):
        d = TerminalDistribution(location=0.0, scale=0.0)
        with pytest.raises(DegenerateLawError):
            d.conditional_median_above(0.5)


class TestMoments:
    @pytest.mark.parametrize("scale", [0.25, 1.0, 2.0])
    def test_mean_matches_numeric_integral(self, scale):
        d = TerminalDistribution(location=0.1, scale=scale)
        m, s = d.location, d.scale

        def integrand(z):
            x = math.exp(m + s * z)
            return x * d.pdf(x) * s * x  # x * pdf(x) dx with x = exp(m + s z)

        total, _ = quad(integrand, -40, 40, limit=200)
        assert total == pytest.approx(d.mean, rel=1e-7)

    @pytest.mark.parametrize("scale,ref", [
        (0.0, 0.5),
        (1.0, 0.30853753872598690),
        (4.0, 0.022750131948179207),
    ])
    def test_prob_above_mean_references(self, scale, ref):
        d = TerminalDistribution(location=0.7, scale=scale)
        assert float(d.prob_above_mean()) == pytest.approx(ref, abs=1e-15)

    @pytest.mark.parametrize("scale", [0.25, 0.5, 1.0, 2.0, 4.0])
    def test_prob_above_mean_is_one_minus_cdf_at_mean(self, scale):
        d = TerminalDistribution(location=-0.3, scale=scale)
        direct = float(d.prob_above_mean())
        via_cdf = 1.0 - float(d.cdf(d.mean))
        assert abs(direct - via_cdf) <= 1e-13
