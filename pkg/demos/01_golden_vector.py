# %% [markdown]
# # Walking one value through the datapath
#
# The rooter works on the raw FP16 bits. Here we follow 0x785A
# (sign 0, exponent 11110, fraction 0001011010) through each block.

# %%
from e2afs.core import e2afs_sqrt, trace
from e2afs.fp16 import decode, exact_sqrt, to_real

w = 0x785A
d = decode(w)
print(f"input  0x{w:04X}: sign={d.sign} exp={d.biased_exp:05b} frac={d.frac:010b} = {to_real(w)}")

# %% [markdown]
# The exponent is odd (r = 15), so the result exponent is (r - 1) / 2 and
# the significand goes through the x1.5 path. Y < 0.5, so no compensation.

# %%
for key, value in trace(w).items():
    if key == "bits":
        value = f"0x{value:04X}"
    print(f"  {key:>15} = {value}")

# %%
out = e2afs_sqrt(w)
print(f"output 0x{out:04X} = {to_real(out)}   (exact {exact_sqrt(w):.6f})")

# %% [markdown]
# Even powers of two come out exact, since Y = 0 and no shift loses bits.

# %%
for x in (0x3400, 0x3C00, 0x4400, 0x5C00):
    print(f"sqrt({to_real(x)}) -> {to_real(e2afs_sqrt(x))}")
