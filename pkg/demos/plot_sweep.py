"""Plot a sweep CSV produced by ``mixmi sweep`` or 02_sigma_sweep.py.

Usage: python plot_sweep.py [sweep.csv [out.png]]

The CSV is the only interface: the sweep commands emit data, this script
draws it (requires matplotlib).
"""

import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent / "sweep.csv"
out = Path(sys.argv[2]) if len(sys.argv) > 2 else path.with_suffix(".png")

with path.open() as fh:
    rows = list(csv.DictReader(fh))
col = lambda name: [float(r[name]) for r in rows]
sigma = col("sigma")

fig, ax = plt.subplots(figsize=(7, 4.5))
ax.plot(sigma, col("I_ub_KL"), color="darkred", label="upper bound (KL)")
ax.plot(sigma, col("I_lb_Calpha"), color="blue", label="lower bound (Chernoff)")
ax.plot(sigma, col("I_hat_KL"), "--", color="goldenrod", label="estimate (KL)")
ax.plot(sigma, col("I_hat_Calpha"), "--", color="deepskyblue", label="estimate (Chernoff)")
ax.plot(sigma, col("I_hat_D"), "--", color="black", label="estimate (combined)")
ax.plot(sigma, col("I_mc"), color="grey", lw=2, label="Monte Carlo")
ax.plot(sigma, col("I_lb_2H"), "-.", color="orange", label="entropy-bound lower")
ax.plot(sigma, col("I_ub_2H"), "-.", color="green", label="entropy-bound upper")
ax.axhspan(0.0, col("H_C")[0], color="0.9", zorder=0)
ax.set_xscale("log")
ax.set_xlabel("component width sigma")
ax.set_ylabel("mutual information (nats)")
ax.set_ylim(-0.6, 1.3)
ax.legend(fontsize=8, ncol=2)
fig.tight_layout()
fig.savefig(out, dpi=150)
print(f"wrote {out}")
