"""Fidelity decay of the unitary ensemble and the Heisenberg-time revival.

Evaluates the exact closed-form curve for a sweep of perturbation
strengths.  For weak perturbations the decay is Gaussian, around eps ~ 1
it turns exponential, and for strong perturbations the decay slows
dramatically near tau = 1 (one Heisenberg time).  The slowdown sharpens
into a genuine local maximum once eps exceeds ~18.3; the second panel
shows the fully developed revival at eps = 40.
"""

import csv
import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from rmt_fidelity import fidelity_gue

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

taus = np.linspace(0.0, 3.0, 601)
sweep = [0.2, 1.0, 2.0, 4.0, 10.0]

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.2))

with open(OUT / "gue_closed_form.csv", "w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["epsilon", "tau", "f"])
    for eps in sweep:
        f = np.array([fidelity_gue(eps, t) for t in taus])
        ax1.semilogy(taus, f, label=f"eps = {eps:g}")
        for t, v in zip(taus, f):
            writer.writerow([eps, f"{t:.17g}", f"{v:.17g}"])

ax1.set_xlabel(r"$\tau$ (Heisenberg times)")
ax1.set_ylabel(r"$f_\epsilon(\tau)$")
ax1.set_title("exact unitary-ensemble decay")
ax1.set_ylim(1e-7, 1.2)
ax1.axvline(1.0, color="gray", lw=0.6, ls=":")
ax1.legend(fontsize=8)

window = np.linspace(0.6, 1.4, 401)
for eps in (15.0, 25.0, 40.0):
    f = np.array([fidelity_gue(eps, t) for t in window])
    ax2.semilogy(window, f, label=f"eps = {eps:g}")
ax2.axvline(1.0, color="gray", lw=0.6, ls=":")
ax2.set_xlabel(r"$\tau$")
ax2.set_title("partial revival near the Heisenberg time")
ax2.legend(fontsize=8)

fig.tight_layout()
fig.savefig(OUT / "gue_closed_form.png", dpi=150)
print(f"wrote {OUT/'gue_closed_form.csv'} and .png")

# the revival becomes a strict interior maximum only at strong perturbation
for eps in (10.0, 20.0, 40.0):
    grid = np.linspace(0.8, 1.1, 301)
    vals = np.array([fidelity_gue(eps, t) for t in grid])
    k = int(np.argmax(vals))
    kind = "interior max" if 0 < k < len(grid) - 1 else "monotone"
    print(f"eps = {eps:4g}: max f on [0.8, 1.1] at tau = {grid[k]:.3f} ({kind})")
