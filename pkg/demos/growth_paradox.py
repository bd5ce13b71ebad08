"""Multiplicative growth: the mean explodes while the median vanishes.

Per-step rates of 0.5 and 1.7 with equal probability average 1.1, so the
expected size after 100 steps is 1.1^100 ~ 13781 times the start.  Yet the
geometric mean 0.92 < 1 governs the typical path: the median size decays
to ~3e-4, and the chance of merely beating the starting value is under 10%.
The exact enumeration of all 101 outcomes makes the skew visible.
"""

import math

from medianbs import (
    GrowthModel, enumerate_distribution, expected_size, growth_stats,
    median_size, prob_exceeds,
)

model = GrowthModel(rates=(0.5, 1.7), probs=(0.5, 0.5), initial=1.0,
                    horizon=100)
stats = growth_stats(model)

print(f"E[l]      = {stats.mu_l:.4f}")
print(f"E[log l]  = {stats.mu_log:.5f}")
print(f"geo mean  = {stats.geo_mean:.5f}")
print()
print(f"expected size after 100 steps: {expected_size(model):12.1f}")
print(f"median   size after 100 steps: {median_size(model):12.3e}")
print()

for label, method in (("exact enumeration", "exact"),
                      ("normal approximation", "normal")):
    p = float(prob_exceeds(model, 1.0, method))
    print(f"P[S_100 > S_0], {label:22s}: {p:.5f}")
print()

mean = expected_size(model)
outcomes = enumerate_distribution(model)
above = math.fsum(p for s, p in outcomes if s > mean)
print(f"P[S_100 > E[S_100]] = {above:.5f}   "
      f"P[S_100 < E[S_100]] = {1.0 - above:.5f}")
print()

# the few outcomes that carry the expectation
print("largest outcomes (size, probability):")
for size, p in outcomes[-4:]:
    print(f"  {size:12.4e}  {float(p):12.4e}")
print("smallest outcomes:")
for size, p in outcomes[:2]:
    print(f"  {size:12.4e}  {float(p):12.4e}")
