# %% [markdown]
# # Where do the breakpoint and the constants come from?
#
# The formula table splits Y at 0.5 and applies -0.045 (even r) and
# +0.3333 inside (Y + c)/4 (odd r) on the high half. We redo the searches.

# %%
from e2afs.analysis import breakpoint_objective, compensation_objective, search_breakpoint, search_compensation
from e2afs.core import Parity

best = search_breakpoint(1e-3)
print(f"best split k = {best.argmin}, MED = {best.objective:.5f}")
print(f"at k = 0.5:        MED = {breakpoint_objective(0.5):.5f}")

# %% [markdown]
# The objective is flat around the optimum, so the MSB-only test at 0.5
# costs almost nothing.

# %%
for k in (0.3, 0.4, 0.45, 0.5, 0.505, 0.55, 0.6, 0.7):
    print(f"  k={k:<6} MED={breakpoint_objective(k):.5f}")

# %% [markdown]
# Now each high-cell constant, at 1e-6 resolution.

# %%
for parity, used in ((Parity.EVEN, 0.045), (Parity.ODD, 0.3333)):
    res = search_compensation(parity, resolution=1e-6)
    mine = compensation_objective(parity, used)
    print(f"{parity.value:>4}: optimum c={res.argmin:.6f} MED={res.objective:.5f}; "
          f"c={used} gives MED={mine:.5f} ({mine / res.objective:.3f}x)")

# %% [markdown]
# The even constant lands close to its optimum. The odd constant 1/3 makes
# the error vanish at Y -> 1 instead, which costs MED in the cell compared to
# the least-absolute-error fit.
