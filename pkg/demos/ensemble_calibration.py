"""Spectral sanity checks of the sampled ensembles.

The entry variances are chosen so that the mean level density follows the
semicircle with value one at the band centre, i.e. unit mean spacing
there; that normalisation is what makes the fidelity time axis read in
Heisenberg times.  This script histograms sampled spectra against the
semicircle, prints the calibration report, and plots the empirical
two-level form factor against 1 - b2 for the orthogonal and unitary
ensembles.
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from rmt_fidelity import (EnsembleSpec, PerturbationSpec, SimulationConfig,
                          TimeGrid, b2, draw_matrix, realization_stream,
                          semicircle_density, spectral_calibration)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

DIM, DRAWS, SEED = 300, 80, 4

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.2))

spec = EnsembleSpec(1, DIM)
levels = np.concatenate([
    np.linalg.eigvalsh(draw_matrix(spec, realization_stream(SEED, o, 0)))
    for o in range(DRAWS)])
edges = np.linspace(-2 * DIM / np.pi, 2 * DIM / np.pi, 61)
counts, _ = np.histogram(levels, bins=edges)
centers = 0.5 * (edges[:-1] + edges[1:])
ax1.bar(centers, counts / (DRAWS * np.diff(edges)), width=np.diff(edges),
        alpha=0.5, label="sampled spectra")
ax1.plot(centers, semicircle_density(DIM, np.clip(centers, edges[0], edges[-1])),
         "k", label="semicircle")
ax1.set_xlabel("energy")
ax1.set_ylabel("level density")
ax1.set_title(f"orthogonal ensemble, rank {DIM}")
ax1.legend(fontsize=8)

ts = np.linspace(0.05, 2.0, 79)
for beta, color in ((1, "C0"), (2, "C1")):
    spec = EnsembleSpec(beta, DIM)
    band = slice((DIM - 60) // 2, (DIM - 60) // 2 + 60)
    zs = []
    for o in range(DRAWS):
        ev = np.linalg.eigvalsh(draw_matrix(spec, realization_stream(SEED, o, 1)))
        zs.append(np.exp(2j * np.pi * np.outer(ts, ev[band])).sum(axis=1))
    z = np.vstack(zs)
    k_emp = (np.mean(np.abs(z) ** 2, axis=0) - np.abs(z.mean(axis=0)) ** 2) / 60
    ax2.plot(ts, k_emp, color=color, alpha=0.6, label=f"empirical, beta = {beta}")
    ax2.plot(ts, 1.0 - b2(beta, ts), color=color, ls="--",
             label=f"$1 - b_2$, beta = {beta}")
ax2.set_xlabel("t (Heisenberg times)")
ax2.set_ylabel("spectral form factor")
ax2.legend(fontsize=8)

fig.tight_layout()
fig.savefig(OUT / "ensemble_calibration.png", dpi=150)
print(f"wrote {OUT/'ensemble_calibration.png'}\n")

for beta, dim in ((1, 300), (2, 300), (4, 100)):
    cfg = SimulationConfig(ensemble=EnsembleSpec(beta, dim),
                           perturbation=PerturbationSpec(0.0),
                           taus=TimeGrid([0.0, 1.0]),
                           outer_reals=DRAWS, inner_reals=1, seed=SEED)
    for line in spectral_calibration(cfg).lines():
        print(line)
