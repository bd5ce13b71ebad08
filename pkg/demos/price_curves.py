"""The two price formulas along sigma*sqrt(tau) and along the spot.

The mean price climbs monotonically toward the spot as sigma*sqrt(tau)
grows.  The median price is not even monotonic: it first dips (the typical
outcome shrinks as volatility drags the median down) before the widening
exercise-region median pulls it back up.  Against the spot the two give
visibly different shapes.

Writes price_curves.png next to this script.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from medianbs import MarketParams, price_curve

fig, (top, bottom) = plt.subplots(2, 1, figsize=(7, 8))

# against sigma*sqrt(tau), swept through tau at fixed sigma
for strike, color in ((0.2, "tab:blue"), (0.7, "tab:orange")):
    base = MarketParams(spot=1.5, strike=strike, rate=0.0, vol=1.0, tau=1.0)
    c = price_curve(base, "sigma_sqrt_tau", 0.01, 5.0, 300)
    top.plot(c.x, c.mean, color=color, ls="--", label=f"mean, K={strike}")
    top.plot(c.x, c.median, color=color, label=f"median, K={strike}")
top.axhline(1.5, color="gray", lw=0.8)
top.set_xlabel(r"$\sigma\sqrt{\tau}$")
top.set_ylabel("call price")
top.set_title("spot 1.5, rate 0")
top.legend(fontsize=9)

# against the spot
for tau, color in ((0.2, "tab:blue"), (2.0, "tab:orange")):
    base = MarketParams(spot=1.0, strike=1.0, rate=0.2, vol=1.0, tau=tau)
    c = price_curve(base, "spot", 0.02, 3.0, 300)
    bottom.plot(c.x, c.mean, color=color, ls="--", label=f"mean, tau={tau}")
    bottom.plot(c.x, c.median, color=color, label=f"median, tau={tau}")
bottom.plot([0, 3], [0, 3], color="gray", lw=0.8)
bottom.set_xlabel("spot $S_t$")
bottom.set_ylabel("call price")
bottom.set_title("strike 1, rate 0.2, vol 1")
bottom.legend(fontsize=9)

fig.tight_layout()
out = pathlib.Path(__file__).with_name("price_curves.png")
fig.savefig(out, dpi=150)
print(f"wrote {out}")

# where the median curve turns around
base = MarketParams(spot=1.5, strike=0.7, rate=0.0, vol=1.0, tau=1.0)
c = price_curve(base, "sigma_sqrt_tau", 0.01, 5.0, 300)
import numpy as np

turn = int(np.argmin(c.median))
print(f"median curve for K=0.7 dips to {c.median[turn]:.6f} "
      f"at sigma*sqrt(tau) = {c.x[turn]:.3f}, then rises")
