"""European call pricing: the classical mean (Black-Scholes) formula, the
median-based alternative, an independent quadrature cross-check, and the
curve/density generators behind the package's figures.

Mean price:    C_bs  = S * Phi(d1) - exp(-r*tau) * K * Phi(d2)
Median price:  C_med = exp(-r*tau) * (M - K), where M is the conditional
               median of S_T above K: P[S_T > M] = P[S_T > K] / 2.
               Equivalently S * exp(s * Phi^{-1}(1 - Phi(d2)/2) - s^2/2)
               - K * exp(-r*tau) with s = sigma*sqrt(tau).

Both pricers share the degenerate limits: sigma*sqrt(tau) = 0 prices the
deterministic forward, max(S - K*exp(-r*tau), 0); K = 0 prices the full
(discounted) asset: S for the mean, S * exp(-sigma^2*tau/2) for the median.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import quad

from .errors import DegenerateCaseError, CurveError, QuadratureError
from .lognormal import MarketParams, terminal_distribution
from .normal import norm_cdf, norm_pdf

__all__ = [
    "PriceQuote", "CurveSeries", "DensityReport",
    "d_values", "bs_price", "bs_price_quadrature", "median_price",
    "price_curve", "density_report",
]


@dataclass(frozen=True)
class PriceQuote:
    """A priced call with its diagnostics.

    ``method`` is "mean" or "median".  ``exercise_prob`` is Phi(d2);
    ``conditional_median`` is set for the median method only (None when the
    degenerate case makes it undefined).  In degenerate cases d1/d2 are
    +-inf with exercise_prob 0, 0.5 or 1 by the obvious limit.
    """

    method: str
    value: float
    d1: float
    d2: float
    exercise_prob: float
    discount: float
    conditional_median: float | None = None


@dataclass(frozen=True)
class CurveSeries:
    """Mean and median prices along one swept axis ("sigma_sqrt_tau" or "spot")."""

    axis: str
    x: np.ndarray
    mean: np.ndarray
    median: np.ndarray

    @property
    def points(self) -> list[tuple[float, float, float]]:
        return [(float(a), float(b), float(c))
                for a, b, c in zip(self.x, self.mean, self.median)]


@dataclass(frozen=True)
class DensityReport:
    """Sampled terminal density with the two price markers.

    ``marker_median`` is the conditional median above the strike;
    ``marker_mean`` = K + exp(r*tau) * C_bs is the terminal price whose
    discounted payoff equals the mean price.  ``area_left`` is
    P[K < S_T < marker_median] and ``area_right`` is P[S_T > marker_median];
    by construction of the median they are equal.
    """

    x: np.ndarray
    pdf: np.ndarray
    marker_mean: float
    marker_median: float
    area_left: float
    area_right: float


def d_values(params: MarketParams) -> tuple[float, float]:
    """The standardized log-moneyness terms.

    d1 = (log(S/K) + (r + sigma^2/2) * tau) / (sigma*sqrt(tau)),
    d2 = d1 - sigma*sqrt(tau).

    Raises DegenerateCaseError when sigma*sqrt(tau) = 0 or K = 0; the
    pricers catch it and use the explicit limit formulas instead.
    """
    sst = params.sigma_sqrt_tau
    if sst == 0.0 or params.strike == 0.0:
        raise DegenerateCaseError(
            f"d1/d2 undefined for sigma*sqrt(tau)={sst!r}, strike={params.strike!r}"
        )
    d1 = (math.log(params.spot / params.strike)
          + (params.rate + 0.5 * params.vol**2) * params.tau) / sst
    return d1, d1 - sst


def _degenerate_quote(params: MarketParams, method: str) -> PriceQuote:
    disc = params.discount
    if params.strike == 0.0:
        if method == "mean":
            value = params.spot
        else:
            value = params.spot * math.exp(-0.5 * params.vol**2 * params.tau)
        dist = terminal_distribution(params)
        cond = dist.median if method == "median" else None
        return PriceQuote(method=method, value=value, d1=math.inf, d2=math.inf,
                          exercise_prob=1.0, discount=disc, conditional_median=cond)
    # sigma*sqrt(tau) == 0: the terminal price is the deterministic forward.
    forward = params.spot * math.exp(params.rate * params.tau)
    value = max(params.spot - params.strike * disc, 0.0)
    if forward > params.strike:
        d = math.inf
        prob = 1.0
        cond = forward if method == "median" else None
    elif forward < params.strike:
        d = -math.inf
        prob = 0.0
        cond = None
    else:
        d = 0.0
        prob = 0.5
        cond = None
    return PriceQuote(method=method, value=value, d1=d, d2=d,
                      exercise_prob=prob, discount=disc, conditional_median=cond)


def bs_price(params: MarketParams) -> PriceQuote:
    """Mean-based (Black-Scholes) call price, S*Phi(d1) - exp(-r*tau)*K*Phi(d2)."""
    try:
        d1, d2 = d_values(params)
    except DegenerateCaseError:
        return _degenerate_quote(params, "mean")
    disc = params.discount
    if d2 >= 0.0:
        # In-the-money arrangement: intrinsic plus the put value, with both
        # tails evaluated on their small side.  Algebraically identical to
        # the standard form but free of its near-1 cancellation, so the
        # computed price never dips below intrinsic and stays monotone in
        # sigma*sqrt(tau) even where the true increment is below one ulp.
        put = disc * params.strike * norm_cdf(-d2) - params.spot * norm_cdf(-d1)
        value = (params.spot - disc * params.strike) + max(put, 0.0)
    else:
        value = params.spot * norm_cdf(d1) - disc * params.strike * norm_cdf(d2)
    return PriceQuote(method="mean", value=value, d1=d1, d2=d2,
                      exercise_prob=norm_cdf(d2), discount=disc)


def median_price(params: MarketParams) -> PriceQuote:
    """Median-based call price, exp(-r*tau) * (M - K) with M the conditional
    median of S_T above K.

    The inner quantile is evaluated as -norm_quantile(Phi(d2)/2), which is
    identical to norm_quantile(1 - Phi(d2)/2) but keeps full precision when
    the exercise probability is tiny.  Propagates TailUnderflowError for
    strikes beyond double-precision reach.
    """
    try:
        d1, d2 = d_values(params)
    except DegenerateCaseError:
        return _degenerate_quote(params, "median")
    dist = terminal_distribution(params)
    cond = dist.conditional_median_above(params.strike)
    disc = params.discount
    value = disc * (cond - params.strike)
    # The conditional median exceeds the strike whenever sst > 0 and K > 0,
    # so a negative value can only mean a coding error upstream.
    assert value > 0.0, "median price must be positive for K > 0, sst > 0"
    return PriceQuote(method="median", value=value, d1=d1, d2=d2,
                      exercise_prob=norm_cdf(d2), discount=disc,
                      conditional_median=cond)


def bs_price_quadrature(params: MarketParams) -> float:
    """Mean price by adaptive quadrature of exp(-r*tau) * E[(S_T - K)^+].

    The substitution x = exp(m + s*z) turns the payoff expectation into a
    Gaussian-weighted integral over z, which adaptive Gauss-Kronrod
    quadrature resolves to ~1e-13; the absolute error target is
    1e-10 * spot, and falling short raises QuadratureError with the
    achieved estimate.  Serves as the independent oracle for ``bs_price``.
    """
    sst = params.sigma_sqrt_tau
    if sst == 0.0:
        raise DegenerateCaseError("quadrature oracle requires sigma*sqrt(tau) > 0")
    dist = terminal_distribution(params)
    m, s = dist.location, dist.scale
    k = params.strike
    z0 = -math.inf if k == 0.0 else (math.log(k) - m) / s

    def integrand(z: float) -> float:
        return (math.exp(m + s * z) - k) * norm_pdf(z)

    # Outside +-45 standard units every factor is below ~1e-300 relative
    # to the result; clamping keeps QUADPACK on the mass.
    lo = max(z0, -45.0)
    hi = max(s, z0) + 45.0
    target = 1e-10 * params.spot
    value, abserr, *_ = quad(integrand, lo, hi, epsabs=0.01 * target,
                             epsrel=1e-13, limit=400, full_output=1)
    if abserr > target:
        raise QuadratureError(
            f"quadrature achieved +-{abserr:.3e}, target +-{target:.3e}",
            achieved=abserr, target=target,
        )
    return params.discount * value


def _swept_params(params: MarketParams, axis: str, x: float, sweep: str) -> MarketParams:
    if axis == "sigma_sqrt_tau":
        if sweep == "tau":
            if params.vol <= 0:
                raise DegenerateCaseError("sweeping tau requires vol > 0")
            return replace(params, tau=(x / params.vol) ** 2)
        if params.tau <= 0:
            raise DegenerateCaseError("sweeping sigma requires tau > 0")
        return replace(params, vol=x / math.sqrt(params.tau))
    if axis == "spot":
        return replace(params, spot=x)
    raise ValueError(f"unknown axis {axis!r}")


def price_curve(params: MarketParams, axis: str, lo: float, hi: float, n: int,
                sweep: str = "tau") -> CurveSeries:
    """Mean and median prices on n evenly spaced points of ``axis``.

    For axis "sigma_sqrt_tau" the product is swept by varying tau at fixed
    sigma (``sweep="tau"``, the default) or by varying sigma at fixed tau
    (``sweep="sigma"``); with r = 0 the two styles coincide.  Grid points
    failing pricer preconditions are collected into a CurveError.
    """
    if axis not in ("sigma_sqrt_tau", "spot"):
        raise ValueError(f"unknown axis {axis!r}")
    if sweep not in ("tau", "sigma"):
        raise ValueError(f"unknown sweep {sweep!r}")
    if not (lo < hi):
        raise ValueError(f"need lo < hi, got ({lo!r}, {hi!r})")
    if n < 2:
        raise ValueError(f"need n >= 2, got {n!r}")
    xs = np.linspace(lo, hi, n)
    mean = np.empty(n)
    median = np.empty(n)
    failures: list[tuple[float, Exception]] = []
    for i, x in enumerate(xs):
        try:
            p = _swept_params(params, axis, float(x), sweep)
            mean[i] = bs_price(p).value
            median[i] = median_price(p).value
        except Exception as exc:  # collected, reported together
            failures.append((float(x), exc))
            mean[i] = median[i] = math.nan
    if failures:
        shown = ", ".join(f"x={x:g}: {e}" for x, e in failures[:5])
        raise CurveError(
            f"{len(failures)} of {n} grid points failed ({shown})", failures
        )
    return CurveSeries(axis=axis, x=xs, mean=mean, median=median)


def density_report(params: MarketParams, grid_n: int = 512) -> DensityReport:
    """Terminal density on a log-spaced grid with the two price markers.

    The grid spans the central quantiles [1e-4, 1 - 1e-4].  area_left and
    area_right are the probabilities of the two pieces the conditional
    median cuts the exercise region into; equal by construction.
    """
    if grid_n < 2:
        raise ValueError(f"need grid_n >= 2, got {grid_n!r}")
    dist = terminal_distribution(params)
    lo = dist.quantile(1e-4)
    hi = dist.quantile(1.0 - 1e-4)
    x = np.exp(np.linspace(math.log(lo), math.log(hi), grid_n))
    marker_median = dist.conditional_median_above(params.strike)
    marker_mean = params.strike + math.exp(params.rate * params.tau) * bs_price(params).value
    cdf_at_k = 0.0 if params.strike == 0.0 else dist.cdf(params.strike)
    area_left = dist.cdf(marker_median) - cdf_at_k
    area_right = dist.tail(marker_median)
    return DensityReport(x=x, pdf=dist.pdf(x), marker_mean=marker_mean,
                         marker_median=marker_median,
                         area_left=float(area_left), area_right=float(area_right))
