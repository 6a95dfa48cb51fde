"""Where the linear-response approximation works and where it fails.

The weak-perturbation law 1 - eps*C(tau) and its exponentiated version
exp(-eps*C(tau)) are compared with the exact unitary-ensemble curve.  For
eps << 1 all three coincide; at eps = 4 the exponentiated form still
captures the early decay but misses the slowdown near the Heisenberg
time entirely, since C(tau) grows monotonically.
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from rmt_fidelity import c_of_tau, fidelity_gue, fidelity_lr

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

taus = np.linspace(0.0, 2.0, 201)
fig, axes = plt.subplots(1, 3, figsize=(12, 3.8), sharey=False)

for ax, eps in zip(axes, (0.1, 1.0, 4.0)):
    exact = [fidelity_gue(eps, t) for t in taus]
    linear = [fidelity_lr(2, eps, t) for t in taus]
    expo = [fidelity_lr(2, eps, t, exponentiated=True) for t in taus]
    ax.plot(taus, exact, "k", label="exact")
    ax.plot(taus, linear, ":", label="linear response")
    ax.plot(taus, expo, "--", label="exponentiated")
    ax.set_ylim(-0.05, 1.02)
    ax.set_title(f"eps = {eps:g}")
    ax.set_xlabel(r"$\tau$")
axes[0].set_ylabel(r"$f_\epsilon(\tau)$")
axes[0].legend(fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "linear_response_limits.png", dpi=150)
print(f"wrote {OUT/'linear_response_limits.png'}")

print("\ncoefficient C(tau) per ensemble (quadratic growth ~ tau^2/beta):")
for beta in (1, 2, 4):
    row = ", ".join(f"C({t:g}) = {c_of_tau(beta, t):.4f}" for t in (0.5, 1.0, 2.0))
    print(f"  beta = {beta}: {row}")
