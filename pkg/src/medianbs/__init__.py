"""European call pricing by mean (Black-Scholes) and median formulas,
with the multiplicative-growth model that motivates the median view and
quadrature/Monte Carlo oracles for every analytic value.
"""

from .errors import (
    CurveError, DegenerateCaseError, DegenerateLawError, DomainError,
    InsufficientExceedancesError, MedianBSError, QuadratureError,
    SupportTooLargeError, TailUnderflowError, ValidationError,
)
from .growth import (
    GrowthModel, GrowthStats, enumerate_distribution, expected_size,
    growth_stats, median_size, prob_exceeds,
)
from .lognormal import MarketParams, TerminalDistribution, terminal_distribution
from .montecarlo import (
    McConfig, McEstimate, McValidationReport, empirical_price,
    read_sample_file, sample_terminal, validate,
)
from .normal import Probability, norm_cdf, norm_pdf, norm_quantile
from .pricing import (
    CurveSeries, DensityReport, PriceQuote, bs_price, bs_price_quadrature,
    d_values, density_report, median_price, price_curve,
)

__version__ = "0.1.0"

__all__ = [
    "MedianBSError", "ValidationError", "DomainError", "DegenerateLawError",
    "DegenerateCaseError", "TailUnderflowError", "QuadratureError",
    "SupportTooLargeError", "InsufficientExceedancesError", "CurveError",
    "Probability", "norm_pdf", "norm_cdf", "norm_quantile",
    "MarketParams", "TerminalDistribution", "terminal_distribution",
    "PriceQuote", "CurveSeries", "DensityReport",
    "d_values", "bs_price", "bs_price_quadrature", "median_price",
    "price_curve", "density_report",
    "GrowthModel", "GrowthStats", "growth_stats", "expected_size",
    "median_size", "enumerate_distribution", "prob_exceeds",
    "McConfig", "McEstimate", "McValidationReport", "sample_terminal",
    "empirical_price", "validate", "read_sample_file",
]
