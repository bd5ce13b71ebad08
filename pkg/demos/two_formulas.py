"""Price one European call by the mean and median formulas.

The mean (Black-Scholes) price is the discounted expected payoff; the
median price discounts the conditional median of the terminal price above
the strike instead.  For the skewed log-normal terminal law the two can
differ a lot, yet they coincide as tau -> 0.
"""

from dataclasses import replace

from medianbs import (
    MarketParams, bs_price, bs_price_quadrature, median_price,
    terminal_distribution,
)

params = MarketParams(spot=1.5, strike=0.2, rate=0.0, vol=1.0, tau=1.0)
dist = terminal_distribution(params)

print(f"spot {params.spot}, strike {params.strike}, rate {params.rate}, "
      f"vol {params.vol}, tau {params.tau}")
print(f"terminal law: log S_T ~ N({dist.location:.6f}, {dist.scale:.6f}^2)")
print()

mean_quote = bs_price(params)
median_quote = median_price(params)
print(f"mean   price: {mean_quote.value:.6f}")
print(f"median price: {median_quote.value:.6f}")
print(f"d1 = {mean_quote.d1:.5f}, d2 = {mean_quote.d2:.5f}, "
      f"P[exercise] = {float(mean_quote.exercise_prob):.5f}")
print(f"conditional median above strike: {median_quote.conditional_median:.6f}")
print()

# the quadrature oracle integrates the discounted payoff directly
quad = bs_price_quadrature(params)
print(f"quadrature cross-check: {quad:.12f} "
      f"(closed form {mean_quote.value:.12f}, "
      f"diff {abs(quad - mean_quote.value):.2e})")
print()

# at maturity both formulas collapse to the intrinsic value
for tau in (0.25, 0.05, 0.01, 0.0):
    p = replace(params, tau=tau)
    print(f"tau = {tau:5.2f}:  mean {bs_price(p).value:.6f}   "
          f"median {median_price(p).value:.6f}")
