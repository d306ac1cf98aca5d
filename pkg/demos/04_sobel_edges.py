# %% [markdown]
# # Sobel edges with an approximate square root
#
# Pass a P5 image path as the first argument, or use a synthetic
# natural-statistics image.

# %%
import sys
from pathlib import Path

from e2afs.apps import load_pnm, natural_gray, psnr, save_pnm, sobel_magnitude, ssim

img = load_pnm(sys.argv[1]) if len(sys.argv) > 1 else natural_gray(seed=0)
print("image", img.shape, "mean", round(float(img.mean()), 1))

# %%
exact = sobel_magnitude(img, "exact")
approx = sobel_magnitude(img, "e2afs")
print(f"PSNR = {psnr(exact, approx):.3f} dB")
print(f"SSIM = {ssim(exact, approx):.4f}")

# %%
diff = exact.astype(int) - approx.astype(int)
print("pixel differences: max", abs(diff).max(), " share nonzero", round(float((diff != 0).mean()), 4))

# %%
out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
for name, im in (("input", img), ("sobel_exact", exact), ("sobel_e2afs", approx)):
    save_pnm(im, out / f"{name}.pgm")
print("wrote PGMs to", out)
