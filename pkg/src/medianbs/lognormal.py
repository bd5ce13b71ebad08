"""Log-normal law of the terminal price under geometric Brownian motion.

With spot S, rate r, volatility sigma and time to maturity tau, the
terminal price is log-normal: log S_T ~ N(m, s^2) with

    m = log(S) + (r - sigma^2/2) * tau      (location)
    s = sigma * sqrt(tau)                   (scale)

``scale == 0`` is an explicit point mass at exp(location); density,
CDF and quantile are undefined there and raise ``DegenerateLawError``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateLawError, DomainError, TailUnderflowError, ValidationError
from .normal import Probability, norm_cdf, norm_pdf, norm_quantile

__all__ = ["MarketParams", "TerminalDistribution", "terminal_distribution"]

# Below this exercise probability, double precision cannot represent the
# equal-area construction; callers see a TailUnderflowError.
_TAIL_FLOOR = 1e-300


@dataclass(frozen=True)
class MarketParams:
    """Pricing inputs for a European call.

    spot: current price S (> 0); strike: K (>= 0); rate: riskless rate r
    per unit time (any sign); vol: sigma per sqrt(time) (>= 0); tau: time
    to maturity T - t (>= 0).
    """

    spot: float
    strike: float
    rate: float
    vol: float
    tau: float

    def __post_init__(self):
        bad = []
        for name in ("spot", "strike", "rate", "vol", "tau"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                bad.append(f"{name}={v!r} (must be finite)")
        if not bad:
            if self.spot <= 0:
                bad.append(f"spot={self.spot!r} (must be > 0)")
            if self.strike < 0:
                bad.append(f"strike={self.strike!r} (must be >= 0)")
            if self.vol < 0:
                bad.append(f"vol={self.vol!r} (must be >= 0)")
            if self.tau < 0:
                bad.append(f"tau={self.tau!r} (must be >= 0)")
        if bad:
            names = tuple(entry.split("=")[0] for entry in bad)
            raise ValidationError("invalid market params: " + "; ".join(bad), fields=names)

    @property
    def sigma_sqrt_tau(self) -> float:
        return self.vol * math.sqrt(self.tau)

    @property
    def discount(self) -> float:
        return math.exp(-self.rate * self.tau)


@dataclass(frozen=True)
class TerminalDistribution:
    """Log-normal terminal law; a point mass at exp(location) when scale == 0."""

    location: float
    scale: float

    def __post_init__(self):
        if not math.isfinite(self.location):
            raise ValidationError(f"location={self.location!r} must be finite",
                                  fields=("location",))
        if not (math.isfinite(self.scale) and self.scale >= 0):
            raise ValidationError(f"scale={self.scale!r} must be finite and >= 0",
                                  fields=("scale",))

    @property
    def is_point_mass(self) -> bool:
        return self.scale == 0.0

    @property
    def median(self) -> float:
        return math.exp(self.location)

    @property
    def mean(self) -> float:
        """E[S_T] = exp(m + s^2/2)."""
        return math.exp(self.location + 0.5 * self.scale * self.scale)

    def _require_density(self):
        if self.is_point_mass:
            raise DegenerateLawError("point-mass law (scale = 0) has no density")

    def pdf(self, x):
        """Density (1/(x*s)) * norm_pdf((log x - m)/s) for x > 0."""
        self._require_density()
        arr = np.asarray(x, dtype=float)
        if np.any(~(arr > 0.0)):  # catches x <= 0 and NaN
            raise DomainError("pdf: x must be > 0")
        z = (np.log(arr) - self.location) / self.scale
        out = norm_pdf(z) / (arr * self.scale)
        return float(out) if np.ndim(x) == 0 else out

    def cdf(self, x):
        """P[S_T <= x] for x > 0."""
        self._require_density()
        arr = np.asarray(x, dtype=float)
        if np.any(~(arr > 0.0)):
            raise DomainError("cdf: x must be > 0")
        out = norm_cdf((np.log(arr) - self.location) / self.scale)
        return out if np.ndim(x) else Probability(out)

    def tail(self, k) -> Probability:
        """P[S_T > k] for k >= 0, evaluated on the upper tail directly.

        Never computed as 1 - cdf(k): for k deep in the upper tail that
        subtraction would destroy the relative accuracy the median-price
        pipeline depends on.
        """
        self._require_density()
        k = float(k)
        if not k >= 0.0:
            raise DomainError("tail: k must be >= 0")
        if k == 0.0:
            return Probability(1.0)
        return norm_cdf(-(math.log(k) - self.location) / self.scale)

    def quantile(self, p):
        """Inverse CDF: exp(m + s * norm_quantile(p)) for 0 < p < 1."""
        self._require_density()
        return np.exp(self.location + self.scale * norm_quantile(p))

    def conditional_median_above(self, k: float) -> float:
        """The price M with P[S_T > M] = P[S_T > k] / 2.

        M splits the exercise region {S_T > k} into two halves of equal
        probability; M > k always.  Raises TailUnderflowError when
        P[S_T > k] is below 1e-300 (strike too deep out of the money).
        """
        t = self.tail(k)
        if t < _TAIL_FLOOR:
            raise TailUnderflowError(
                f"P[S_T > {k!r}] = {float(t):.3e} is below 1e-300; "
                "the equal-area median is not representable"
            )
        # quantile(1 - t/2) evaluated as exp(m - s * quantile(t/2)) so the
        # tiny-tail case keeps full relative precision.
        return math.exp(self.location - self.scale * norm_quantile(0.5 * t))

    def prob_above_mean(self) -> Probability:
        """P[S_T > E[S_T]] = norm_cdf(-scale/2); defined for scale >= 0."""
        return norm_cdf(-0.5 * self.scale)


def terminal_distribution(params: MarketParams) -> TerminalDistribution:
    """Terminal law implied by the market parameters."""
    location = math.log(params.spot) + (params.rate - 0.5 * params.vol**2) * params.tau
    return TerminalDistribution(location=location, scale=params.sigma_sqrt_tau)
