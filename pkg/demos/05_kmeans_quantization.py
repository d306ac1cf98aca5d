# %% [markdown]
# # K-means color quantization with K = 20
#
# Every pixel-centroid distance goes through an FP16 square root.
# Same seed for both rooters, so the rooter is the only difference.
# Pass a P6 path as the first argument to use your own image.

# %%
import sys
import time
from pathlib import Path

from e2afs.apps import KMeansConfig, kmeans_quantize, load_pnm, natural_rgb, psnr, save_pnm, ssim

img = load_pnm(sys.argv[1]) if len(sys.argv) > 1 else natural_rgb(seed=0)
cfg = KMeansConfig(k=20, seed=2024)

# %%
results = {}
for rooter in ("exact", "e2afs"):
    t0 = time.perf_counter()
    res = kmeans_quantize(img, cfg, rooter)
    results[rooter] = res
    print(f"{rooter:>6}: {res.iterations} iterations, {time.perf_counter() - t0:.1f}s, "
          f"PSNR={psnr(img, res.image):.2f} dB, SSIM={ssim(img, res.image):.4f}")

# %%
changed = (results["exact"].labels != results["e2afs"].labels).mean()
print(f"pixels whose quantized color differs between rooters: {changed:.2%}")

# %%
out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
for name, res in results.items():
    save_pnm(res.image, out / f"kmeans_{name}.ppm")
print("wrote PPMs to", out)
