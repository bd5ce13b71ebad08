"""Multiplicative growth with a random rate: mean vs. typical behavior.

A size S evolves as S_{t+1} = l_t * S_t with i.i.d. rates l_t drawn from a
finite distribution.  The expected size grows like mu_l^t (mu_l = E[l]),
but the *typical* trajectory follows the geometric mean M = exp(E[log l]),
which is the median of the size distribution.  With mu_l > 1 > M the
expectation explodes while almost every realization decays; an exact
enumeration of the outcome distribution makes the gap measurable.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import DomainError, SupportTooLargeError, ValidationError
from .normal import Probability, norm_cdf

__all__ = [
    "GrowthModel", "GrowthStats",
    "growth_stats", "expected_size", "median_size",
    "enumerate_distribution", "prob_exceeds",
]

_MAX_OUTCOMES = 5_000_000


@dataclass(frozen=True)
class GrowthModel:
    """Finite-support rate distribution with an initial size and horizon.

    rates: possible per-step multipliers (> 0); probs: their probabilities
    (sum to 1); initial: S_0 > 0; horizon: number of steps t >= 0.
    """

    rates: tuple[float, ...]
    probs: tuple[float, ...]
    initial: float = 1.0
    horizon: int = 1

    def __post_init__(self):
        object.__setattr__(self, "rates", tuple(float(r) for r in self.rates))
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        bad = []
        if len(self.rates) < 1 or len(self.rates) != len(self.probs):
            bad.append("rates/probs must have equal length >= 1")
        if any(not (math.isfinite(r) and r > 0) for r in self.rates):
            bad.append(f"rates={self.rates!r} (must be finite and > 0)")
        if any(not (math.isfinite(p) and p >= 0) for p in self.probs):
            bad.append(f"probs={self.probs!r} (must be finite and >= 0)")
        elif self.probs and abs(math.fsum(self.probs) - 1.0) > 1e-12:
            bad.append(f"probs sum to {math.fsum(self.probs)!r}, not 1")
        if not (math.isfinite(self.initial) and self.initial > 0):
            bad.append(f"initial={self.initial!r} (must be finite and > 0)")
        if not (isinstance(self.horizon, int) and self.horizon >= 0):
            bad.append(f"horizon={self.horizon!r} (must be an integer >= 0)")
        if bad:
            raise ValidationError("invalid growth model: " + "; ".join(bad),
                                  fields=("rates", "probs", "initial", "horizon"))


@dataclass(frozen=True)
class GrowthStats:
    """Moments of the one-step rate distribution.

    mu_l = E[l]; mu_log = E[log l]; geo_mean = exp(mu_log) (<= mu_l by
    AM-GM); sd_log = std dev of log l.
    """

    mu_l: float
    mu_log: float
    geo_mean: float
    sd_log: float


def growth_stats(model: GrowthModel) -> GrowthStats:
    """Exact weighted moments of the rate distribution."""
    mu_l = math.fsum(p * r for p, r in zip(model.probs, model.rates))
    mu_log = math.fsum(p * math.log(r) for p, r in zip(model.probs, model.rates))
    var_log = math.fsum(p * (math.log(r) - mu_log) ** 2
                        for p, r in zip(model.probs, model.rates))
    return GrowthStats(mu_l=mu_l, mu_log=mu_log, geo_mean=math.exp(mu_log),
                       sd_log=math.sqrt(max(var_log, 0.0)))


def expected_size(model: GrowthModel) -> float:
    """E[S_t] = mu_l^t * S_0; overflow warns and returns inf."""
    mu_l = growth_stats(model).mu_l
    try:
        return mu_l ** model.horizon * model.initial
    except OverflowError:
        warnings.warn("expected_size overflowed to infinity", RuntimeWarning,
                      stacklevel=2)
        return math.inf


def median_size(model: GrowthModel) -> float:
    """Typical size M^t * S_0 = exp(t * E[log l]) * S_0."""
    stats = growth_stats(model)
    try:
        return math.exp(model.horizon * stats.mu_log) * model.initial
    except OverflowError:
        warnings.warn("median_size overflowed to infinity", RuntimeWarning,
                      stacklevel=2)
        return math.inf


def _count_vectors(k: int, t: int):
    # All (c_1..c_k) with sum t: how often each rate was drawn.
    if k == 1:
        yield [t]
        return
    for c in range(t + 1):
        for rest in _count_vectors(k - 1, t - c):
            yield [c] + rest


def enumerate_distribution(model: GrowthModel) -> list[tuple[float, Probability]]:
    """Exact (size, probability) support of S_t, sorted by size.

    Outcomes are grouped by the multiset of rate draws, so k distinct rates
    over t steps give C(t+k-1, k-1) outcomes with multinomial weights.
    Rejects supports above 5e6 outcomes (use Monte Carlo instead).
    """
    k = len(model.rates)
    t = model.horizon
    support = math.comb(t + k - 1, k - 1)
    if support > _MAX_OUTCOMES:
        raise SupportTooLargeError(
            f"support has {support} outcomes (> {_MAX_OUTCOMES}); too large "
            "for exact enumeration, use Monte Carlo"
        )
    log_rates = [math.log(r) for r in model.rates]
    log_probs = [math.log(p) if p > 0 else -math.inf for p in model.probs]
    lg_t = math.lgamma(t + 1)
    out = []
    for counts in _count_vectors(k, t):
        if any(c > 0 and model.probs[i] == 0.0 for i, c in enumerate(counts)):
            continue  # unreachable outcome
        log_w = lg_t - math.fsum(math.lgamma(c + 1) for c in counts)
        log_w += math.fsum(c * lp for c, lp in zip(counts, log_probs) if c > 0)
        size = model.initial * math.exp(
            math.fsum(c * lr for c, lr in zip(counts, log_rates)))
        out.append((size, Probability(math.exp(log_w))))
    out.sort(key=lambda pair: pair[0])
    return out


def prob_exceeds(model: GrowthModel, threshold: float,
                 method: str = "exact") -> Probability:
    """P[S_t > threshold], exactly or by the CLT normal approximation.

    "exact" sums the enumerated outcome probabilities above the threshold
    (smallest summands first); "normal" applies the central limit theorem
    to log S_t: Phi((t*mu_log - log(threshold/S_0)) / (sd_log*sqrt(t))).
    A deterministic rate (sd_log = 0) degenerates to a 0/1 indicator.
    """
    if not (isinstance(threshold, (int, float)) and threshold > 0
            and math.isfinite(threshold)):
        raise DomainError(f"threshold must be finite and > 0, got {threshold!r}")
    if method == "exact":
        outcomes = enumerate_distribution(model)
        mass = sorted(float(p) for size, p in outcomes if size > threshold)
        return Probability(min(math.fsum(mass), 1.0))
    if method == "normal":
        stats = growth_stats(model)
        t = model.horizon
        gap = t * stats.mu_log - math.log(threshold / model.initial)
        if stats.sd_log == 0.0 or t == 0:
            # Deterministic size: indicator of S_t > threshold.
            return Probability(1.0 if gap > 0 else 0.0)
        return norm_cdf(gap / (stats.sd_log * math.sqrt(t)))
    raise ValueError(f"unknown method {method!r}; use 'exact' or 'normal'")
