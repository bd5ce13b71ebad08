"""Draw the terminal-price density with both price markers.

The conditional median M splits the exercise region {S_T > K} into two
pieces of equal probability: the area between K and M equals the area
beyond M.  The mean-based marker K + e^{r tau} C_bs sits far to its right
because the log-normal's long tail drags the expectation up.

Writes terminal_density.png next to this script.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from medianbs import MarketParams, density_report

params = MarketParams(spot=1.5, strike=0.2, rate=0.0, vol=1.0, tau=1.0)
rep = density_report(params, grid_n=600)

print(f"conditional median marker: {rep.marker_median:.6f}")
print(f"mean-price marker:         {rep.marker_mean:.6f}")
print(f"area K..median: {rep.area_left:.10f}")
print(f"area median..:  {rep.area_right:.10f}")

fig, ax = plt.subplots(figsize=(7, 4.5))
ax.plot(rep.x, rep.pdf, color="black", lw=1.5)
mid = (rep.x >= params.strike) & (rep.x <= rep.marker_median)
tail = rep.x >= rep.marker_median
ax.fill_between(rep.x[mid], rep.pdf[mid], alpha=0.45, color="tab:blue",
                label=f"K .. median (p = {rep.area_left:.4f})")
ax.fill_between(rep.x[tail], rep.pdf[tail], alpha=0.45, color="tab:orange",
                label=f"median .. (p = {rep.area_right:.4f})")
ax.axvline(rep.marker_median, color="tab:red", ls="--",
           label=f"median marker {rep.marker_median:.4f}")
ax.axvline(rep.marker_mean, color="tab:green", ls=":",
           label=f"mean marker {rep.marker_mean:.4f}")
ax.set_xlim(0.0, 4.0)
ax.set_xlabel("terminal price $S_T$")
ax.set_ylabel("density")
ax.legend(loc="upper right", fontsize=9)
fig.tight_layout()

out = pathlib.Path(__file__).with_name("terminal_density.png")
fig.savefig(out, dpi=150)
print(f"wrote {out}")
