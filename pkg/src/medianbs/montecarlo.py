"""Seeded terminal-price sampler and empirical pricers.

The sampler draws S_T = S * exp((r - sigma^2/2)*tau + sigma*sqrt(tau)*Z)
in closed form under the risk-neutral drift r.  Z comes from the inverse
transform through ``norm_quantile`` applied to open-interval uniforms from
numpy's Philox bit generator -- a counter-based generator with 256-bit
state.  Path chunk c uses the substream ``Philox(key=seed).jumped(c)``, so
a sample is a pure function of (seed, paths, chunk) and identical for any
number of workers.

``empirical_price`` turns any terminal-price sample (simulated or loaded
from a file, e.g. bootstrap draws from historical data) into a mean- or
median-based quote; the conditional-median estimate carries a
distribution-free 95% confidence interval from binomial order statistics,
with a bootstrap interval available behind a flag.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

from .errors import InsufficientExceedancesError, ValidationError
from .lognormal import MarketParams, terminal_distribution
from .normal import norm_quantile
from .pricing import bs_price, median_price

__all__ = [
    "McConfig", "McEstimate", "McValidationReport",
    "sample_terminal", "empirical_price", "validate", "read_sample_file",
]

_Z95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass(frozen=True)
class McConfig:
    """Simulation size, seed and paths-per-substream chunk."""

    paths: int
    seed: int = 0
    chunk: int = 1_000_000

    def __post_init__(self):
        bad = []
        if not (isinstance(self.paths, int) and self.paths >= 1):
            bad.append(f"paths={self.paths!r} (must be an integer >= 1)")
        if not (isinstance(self.chunk, int) and self.chunk >= 1):
            bad.append(f"chunk={self.chunk!r} (must be an integer >= 1)")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            bad.append(f"seed={self.seed!r} (must be an unsigned 64-bit integer)")
        if bad:
            raise ValidationError("invalid MC config: " + "; ".join(bad),
                                  fields=("paths", "seed", "chunk"))


@dataclass(frozen=True)
class McEstimate:
    """A Monte Carlo value with its standard error and 95% interval."""

    value: float
    std_error: float
    paths_used: int
    ci_low: float
    ci_high: float

    def __post_init__(self):
        if not (self.ci_low <= self.value <= self.ci_high):
            raise ValidationError(
                f"estimate {self.value!r} outside its CI "
                f"[{self.ci_low!r}, {self.ci_high!r}]", fields=("value",))
        if not self.std_error >= 0:
            raise ValidationError(f"std_error={self.std_error!r} must be >= 0",
                                  fields=("std_error",))


@dataclass(frozen=True)
class McValidationReport:
    """Analytic formulas cross-checked against one simulated sample.

    The mean check passes at |z| <= 4; the median check passes when the
    analytic value lies inside the order-statistic 95% CI (widened by a
    1e-12 relative guard so exact degenerate ties compare equal).  The
    above-mean exceedance fraction is reported with its own z-score but
    does not gate ``passed``.
    """

    analytic_mean: float
    analytic_median: float
    empirical_mean: McEstimate
    empirical_median: McEstimate
    z_mean: float
    mean_ok: bool
    median_ok: bool
    prob_above_mean_analytic: float
    prob_above_mean_empirical: float
    z_prob_above_mean: float
    prob_ok: bool

    @property
    def passed(self) -> bool:
        return self.mean_ok and self.median_ok


def _chunk_values(params: MarketParams, seed: int, index: int, count: int) -> np.ndarray:
    gen = np.random.Generator(np.random.Philox(key=seed).jumped(index))
    raw = gen.integers(0, 1 << 53, size=count, dtype=np.uint64)
    # midpoints of 2^53 cells: uniforms strictly inside (0, 1)
    u = (raw.astype(np.float64) + 0.5) * 2.0**-53
    z = norm_quantile(u)
    drift = (params.rate - 0.5 * params.vol**2) * params.tau
    return params.spot * np.exp(drift + params.sigma_sqrt_tau * z)


def sample_terminal(params: MarketParams, mc: McConfig, workers: int = 1) -> np.ndarray:
    """Terminal prices, deterministic for fixed (seed, paths, chunk).

    Chunks may be computed on any number of workers; the result is
    assembled in chunk-index order either way.
    """
    out = np.empty(mc.paths)
    n_chunks = -(-mc.paths // mc.chunk)

    def fill(index: int) -> None:
        start = index * mc.chunk
        count = min(mc.chunk, mc.paths - start)
        out[start:start + count] = _chunk_values(params, mc.seed, index, count)

    if workers <= 1 or n_chunks == 1:
        for i in range(n_chunks):
            fill(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, range(n_chunks)))
    return out


def _median_rank(n: int, alpha: float = 0.05) -> int:
    # Largest 1-based rank j with P[Bin(n, 1/2) <= j-1] <= alpha/2, so the
    # interval [X_(j), X_(n+1-j)] covers the median with prob >= 1 - alpha.
    j = int(binom.ppf(alpha / 2, n, 0.5))
    while j > 1 and binom.cdf(j - 1, n, 0.5) > alpha / 2:
        j -= 1
    while binom.cdf(j, n, 0.5) <= alpha / 2:
        j += 1
    return max(j, 1)


def _bootstrap_median_ci(values: np.ndarray, seed: int, reps: int = 999,
                         alpha: float = 0.05) -> tuple[float, float]:
    gen = np.random.Generator(np.random.Philox(key=seed))
    n = len(values)
    medians = np.empty(reps)
    for b in range(reps):
        medians[b] = np.median(values[gen.integers(0, n, size=n)])
    lo, hi = np.quantile(medians, [alpha / 2, 1 - alpha / 2])
    return float(lo), float(hi)


def empirical_price(sample: np.ndarray, strike: float, rate: float, tau: float,
                    method: str = "mean", ci: str = "order",
                    seed: int = 0) -> McEstimate:
    """Price a call from a terminal-price sample.

    "mean": discounted average payoff with its standard error.  "median":
    discounted (conditional sample median above the strike - strike); needs
    at least 100 values above the strike.  ``ci`` selects the median's
    interval: "order" (binomial order statistics, default) or "bootstrap"
    (percentile bootstrap, deterministic in ``seed``).
    """
    sample = np.asarray(sample, dtype=float)
    if sample.ndim != 1 or len(sample) == 0:
        raise ValidationError("sample must be a nonempty 1-d array",
                              fields=("sample",))
    disc = math.exp(-rate * tau)
    if method == "mean":
        payoff = np.maximum(sample - strike, 0.0)
        n = len(payoff)
        value = disc * float(np.mean(payoff))
        se = disc * float(np.std(payoff, ddof=1)) / math.sqrt(n) if n > 1 else 0.0
        return McEstimate(value=value, std_error=se, paths_used=n,
                          ci_low=value - _Z95 * se, ci_high=value + _Z95 * se)
    if method != "median":
        raise ValueError(f"unknown method {method!r}; use 'mean' or 'median'")

    exceed = sample[sample > strike]
    n = len(exceed)
    if n < 100:
        raise InsufficientExceedancesError(
            f"median method needs >= 100 samples above the strike, got {n}",
            count=n)
    mid_lo, mid_hi = (n - 1) // 2, n // 2
    j = _median_rank(n)
    ranks = sorted({j - 1, mid_lo, mid_hi, n - j})
    part = np.partition(exceed, ranks)
    med = 0.5 * (part[mid_lo] + part[mid_hi])
    if ci == "order":
        lo, hi = float(part[j - 1]), float(part[n - j])
    elif ci == "bootstrap":
        lo, hi = _bootstrap_median_ci(exceed, seed)
    else:
        raise ValueError(f"unknown ci {ci!r}; use 'order' or 'bootstrap'")
    value = disc * (float(med) - strike)
    ci_low, ci_high = disc * (lo - strike), disc * (hi - strike)
    se = (ci_high - ci_low) / (2 * _Z95)
    return McEstimate(value=value, std_error=se, paths_used=n,
                      ci_low=ci_low, ci_high=ci_high)


def _safe_z(diff: float, se: float, scale: float) -> float:
    if se > 0:
        return diff / se
    return 0.0 if abs(diff) <= 1e-12 * max(1.0, abs(scale)) else math.copysign(math.inf, diff)


def validate(params: MarketParams, mc: McConfig, workers: int = 1) -> McValidationReport:
    """Simulate once and check both analytic prices against the sample."""
    sample = sample_terminal(params, mc, workers=workers)
    analytic_mean = bs_price(params).value
    analytic_median = median_price(params).value
    emp_mean = empirical_price(sample, params.strike, params.rate, params.tau, "mean")
    emp_median = empirical_price(sample, params.strike, params.rate, params.tau, "median")

    z_mean = _safe_z(emp_mean.value - analytic_mean, emp_mean.std_error, analytic_mean)
    mean_ok = abs(z_mean) <= 4.0
    guard = 1e-12 * max(1.0, abs(analytic_median))
    median_ok = (emp_median.ci_low - guard) <= analytic_median <= (emp_median.ci_high + guard)

    dist = terminal_distribution(params)
    p_ref = float(dist.prob_above_mean())
    frac = float(np.mean(sample > dist.mean))
    se_frac = math.sqrt(p_ref * (1.0 - p_ref) / len(sample))
    z_prob = _safe_z(frac - p_ref, se_frac, 1.0)

    return McValidationReport(
        analytic_mean=analytic_mean, analytic_median=analytic_median,
        empirical_mean=emp_mean, empirical_median=emp_median,
        z_mean=z_mean, mean_ok=mean_ok, median_ok=median_ok,
        prob_above_mean_analytic=p_ref, prob_above_mean_empirical=frac,
        z_prob_above_mean=z_prob, prob_ok=abs(z_prob) <= 4.0,
    )


def read_sample_file(path: str) -> np.ndarray:
    """Load terminal prices: one value per line, '#' starts a comment."""
    values = np.loadtxt(path, comments="#", dtype=float, ndmin=1)
    if values.ndim != 1:
        raise ValidationError(
            f"sample file {path!r} must hold one value per line", fields=("file",))
    if len(values) == 0:
        raise ValidationError(f"sample file {path!r} is empty", fields=("file",))
    if not np.all(np.isfinite(values)):
        raise ValidationError(
            f"sample file {path!r} contains non-finite values", fields=("file",))
    return values
