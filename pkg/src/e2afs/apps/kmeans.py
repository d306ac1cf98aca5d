"""K-means color quantization whose distances go through a square rooter.

Every pixel-to-centroid distance is computed as
``rooter(fp16(dr^2 + dg^2 + db^2))``, so the rooter's error can change
which centroid a pixel joins.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rooters import Rooter, get_rooter


@dataclass(frozen=True)
class KMeansConfig:
    k: int = 20
    seed: int = 0
    max_iters: int = 50
    epsilon: float = 0.25

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be positive, got {self.max_iters}")
        if not self.epsilon >= 0:
            raise ValueError(f"epsilon must be non-negative, got {self.epsilon}")


@dataclass(frozen=True)
class KMeansResult:
    image: np.ndarray  # quantized, same shape as the input
    palette: np.ndarray  # (m, 3) uint8, m <= k
    labels: np.ndarray  # (h*w,) cluster index per pixel
    centroids: np.ndarray  # (k, 3) float64 final centroids
    iterations: int


def initial_centroids(pixels: np.ndarray, k: int, seed: int) -> np.ndarray:
    """k distinct colors, taken in the order a seeded shuffle of the pixels visits them."""
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(pixels))
    _, first = np.unique(pixels[order], axis=0, return_index=True)
    if len(first) < k:
        raise ValueError(f"k={k} exceeds the {len(first)} distinct colors in the image")
    picks = order[np.sort(first)[:k]]
    return pixels[picks].astype(np.float64)


def distances(pixels: np.ndarray, centroids: np.ndarray, rooter: Rooter) -> np.ndarray:
    """(n, k) Euclidean distances through the rooter's half-precision path."""
    d2 = np.zeros((len(pixels), len(centroids)))
    for ch in range(3):
        diff = pixels[:, ch, None] - centroids[None, :, ch]
        d2 += diff * diff
    return rooter.sqrt_real(d2)


def reseed_empty(centroids, empty, pixels, labels, dist) -> None:
    """Move each empty centroid onto the pixel farthest from its own centroid.

    Updates ``centroids`` and ``labels`` in place; a pixel is used at most once.
    """
    own = dist[np.arange(len(pixels)), labels].copy()
    for j in empty:
        far = int(np.argmax(own))
        centroids[j] = pixels[far]
        labels[far] = j
        own[far] = -1.0


def kmeans_quantize(img: np.ndarray, cfg: KMeansConfig = KMeansConfig(), rooter: Rooter | str = Rooter.EXACT) -> KMeansResult:
    rooter = get_rooter(rooter)
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError(f"kmeans needs an RGB image, got shape {img.shape}")
    if cfg.k > img.shape[0] * img.shape[1]:
        raise ValueError(f"k={cfg.k} exceeds the pixel count")
    pixels = img.reshape(-1, 3).astype(np.float64)
    centroids = initial_centroids(pixels, cfg.k, cfg.seed)

    labels = None
    iterations = 0
    for iterations in range(1, cfg.max_iters + 1):
        dist = distances(pixels, centroids, rooter)
        new_labels = np.argmin(dist, axis=1)  # first index wins ties
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels

        counts = np.bincount(labels, minlength=cfg.k)
        sums = np.stack([np.bincount(labels, weights=pixels[:, ch], minlength=cfg.k) for ch in range(3)], axis=1)
        updated = centroids.copy()
        nonempty = counts > 0
        updated[nonempty] = sums[nonempty] / counts[nonempty, None]

        if not nonempty.all():
            reseed_empty(updated, np.flatnonzero(~nonempty), pixels, labels, dist)

        shift = float(np.max(np.sqrt(np.sum((updated - centroids) ** 2, axis=1))))
        centroids = updated
        if shift < cfg.epsilon:
            break

    colors = np.clip(np.floor(centroids + 0.5), 0, 255).astype(np.uint8)
    quantized = colors[labels].reshape(img.shape)
    palette = np.unique(colors[np.unique(labels)], axis=0)
    return KMeansResult(quantized, palette, labels, centroids, iterations)
