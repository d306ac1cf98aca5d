# %% [markdown]
# # Exhaustive accuracy over every positive normal half
#
# 30720 inputs, each compared against the float64 square root.

# %%
from pathlib import Path

import numpy as np

from e2afs.analysis import compute_metrics, emit_sweep_csv, sweep_domain

sweep = sweep_domain()
m = compute_metrics(sweep)
print(f"n     = {m.n}")
print(f"MED   = {m.med:.4f}")
print(f"MRED  = {m.mred * 100:.4f} x 1e-2")
print(f"NMED  = {m.nmed * 100:.4f} x 1e-2")
print(f"MSE   = {m.mse:.4f}")
print(f"EDmax = {m.edmax:.4f}")

# %% [markdown]
# Where is the relative error largest? The worst points are odd exponents
# with a zero fraction, where 1.5 stands in for sqrt(2).

# %%
worst = np.argsort(sweep.rel_err)[-5:][::-1]
for i in worst:
    print(f"0x{sweep.inputs[i]:04X}  rel_err={sweep.rel_err[i]:.5f}")

# %% [markdown]
# Write the curve data for external plotting.

# %%
out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
path = emit_sweep_csv(sweep, out / "sweep.csv")
print("wrote", path)

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    x = sweep.exact**2
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(x, sweep.exact, lw=1, label="exact")
    ax.plot(x, sweep.approx, lw=1, label="E2AFS")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("input")
    ax.set_ylabel("square root")
    ax.legend()
    fig.savefig(out / "sweep.png", dpi=120, bbox_inches="tight")
    print("wrote", out / "sweep.png")
