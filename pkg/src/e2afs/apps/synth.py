"""Deterministic surrogate images with natural-image statistics.

The generator is a dead-leaves model: opaque discs with power-law
distributed radii are dropped front to back, each carrying a flat tone
with a gentle linear shading. This yields the occluding edges and roughly
1/f^2 power spectrum of photographs. A smooth illumination field, a small
optical blur and sensor noise are applied on top.
"""

from __future__ import annotations

import numpy as np


def _blur(x: np.ndarray, passes: int = 2) -> np.ndarray:
    # repeated 3-tap binomial filter, edge-replicated
    for _ in range(passes):
        for axis in (0, 1):
            p = np.pad(x, [(1, 1) if a == axis else (0, 0) for a in range(x.ndim)], mode="edge")
            lo = np.take(p, range(0, x.shape[axis]), axis=axis)
            mid = np.take(p, range(1, x.shape[axis] + 1), axis=axis)
            hi = np.take(p, range(2, x.shape[axis] + 2), axis=axis)
            x = 0.25 * lo + 0.5 * mid + 0.25 * hi
    return x


def _smooth_field(rng: np.random.Generator, size: int, channels: int) -> np.ndarray:
    # low-frequency field from a handful of random cosines
    yy, xx = np.mgrid[0:size, 0:size] / size
    field = np.zeros((size, size, channels))
    for _ in range(6):
        fx, fy = rng.uniform(-1.5, 1.5, size=2)
        phase = rng.uniform(0, 2 * np.pi)
        amp = rng.uniform(0.3, 1.0, size=channels)
        field += amp * np.cos(2 * np.pi * (fx * xx + fy * yy) + phase)[..., None]
    return field / 6


def dead_leaves(
    seed: int,
    size: int = 512,
    channels: int = 1,
    n_discs: int = 4000,
    r_min: float = 3.0,
    r_max: float = 160.0,
) -> np.ndarray:
    """Return a ``uint8`` image, (size, size) for gray or (size, size, 3) for RGB."""
    rng = np.random.default_rng(seed)
    canvas = np.full((size, size, channels), np.nan)
    covered = np.zeros((size, size), dtype=bool)

    # radius density ~ r^-3, sampled by inverse CDF
    u = rng.uniform(size=n_discs)
    radii = (r_min**-2 - u * (r_min**-2 - r_max**-2)) ** -0.5
    centers = rng.uniform(-r_max / 4, size + r_max / 4, size=(n_discs, 2))
    if channels == 1:
        tones = rng.beta(2.0, 2.0, size=(n_discs, 1)) * 220 + 18
    else:
        # colors correlated across channels like real scenes
        lum = rng.beta(2.0, 2.0, size=(n_discs, 1)) * 200 + 25
        tones = np.clip(lum + rng.normal(0, 45, size=(n_discs, 3)), 5, 250)
    slopes = rng.normal(0, 0.15, size=(n_discs, 2))

    for (cy, cx), r, tone, (sy, sx) in zip(centers, radii, tones, slopes):
        y0, y1 = max(int(cy - r), 0), min(int(cy + r) + 1, size)
        x0, x1 = max(int(cx - r), 0), min(int(cx + r) + 1, size)
        if y0 >= y1 or x0 >= x1:
            continue
        yy, xx = np.mgrid[y0:y1, x0:x1]
        inside = ((yy - cy) ** 2 + (xx - cx) ** 2 <= r * r) & ~covered[y0:y1, x0:x1]
        if not inside.any():
            continue
        shade = sy * (yy - cy) + sx * (xx - cx)
        patch = canvas[y0:y1, x0:x1]
        patch[inside] = tone + shade[inside][:, None]
        covered[y0:y1, x0:x1] |= inside
        if covered.all():
            break

    background = np.nanmean(canvas) if np.isfinite(canvas).any() else 128.0
    canvas = np.where(np.isnan(canvas), background, canvas)
    canvas *= 1.0 + 0.25 * _smooth_field(rng, size, channels)
    canvas = _blur(canvas)
    canvas += rng.normal(0, 1.5, size=canvas.shape)
    out = np.clip(np.floor(canvas + 0.5), 0, 255).astype(np.uint8)
    return out[..., 0] if channels == 1 else out


def natural_gray(seed: int = 0, size: int = 512) -> np.ndarray:
    return dead_leaves(seed, size, channels=1)


def natural_rgb(seed: int = 0, size: int = 512) -> np.ndarray:
    return dead_leaves(seed, size, channels=3)
