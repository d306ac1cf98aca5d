"""PSNR and windowed SSIM for 8-bit images."""

from __future__ import annotations

import math

import numpy as np

PEAK = 255.0
C1 = (0.01 * PEAK) ** 2
C2 = (0.03 * PEAK) ** 2
WINDOW = 8


def _check_pair(ref: np.ndarray, test: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ref = np.asarray(ref)
    test = np.asarray(test)
    if ref.shape != test.shape:
        raise ValueError(f"shape mismatch: {ref.shape} vs {test.shape}")
    return ref.astype(np.float64), test.astype(np.float64)


def psnr(ref: np.ndarray, test: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB; ``math.inf`` for identical images."""
    a, b = _check_pair(ref, test)
    mse = float(np.mean((a - b) ** 2))
    if mse == 0:
        return math.inf
    return 10 * math.log10(PEAK**2 / mse)


def _window_sums(x: np.ndarray, size: int) -> np.ndarray:
    # integral image; result[i, j] sums x[i:i+size, j:j+size]
    s = np.zeros((x.shape[0] + 1, x.shape[1] + 1))
    s[1:, 1:] = x.cumsum(0).cumsum(1)
    return s[size:, size:] - s[:-size, size:] - s[size:, :-size] + s[:-size, :-size]


def _ssim_plane(a: np.ndarray, b: np.ndarray, size: int) -> float:
    n = size * size
    mu_a = _window_sums(a, size) / n
    mu_b = _window_sums(b, size) / n
    var_a = _window_sums(a * a, size) / n - mu_a**2
    var_b = _window_sums(b * b, size) / n - mu_b**2
    cov = _window_sums(a * b, size) / n - mu_a * mu_b
    num = (2 * mu_a * mu_b + C1) * (2 * cov + C2)
    den = (mu_a**2 + mu_b**2 + C1) * (var_a + var_b + C2)
    return float(np.mean(num / den))


def ssim(ref: np.ndarray, test: np.ndarray, window: int = WINDOW) -> float:
    """Mean SSIM over all ``window`` x ``window`` uniform windows at stride 1.

    Window statistics use population (1/N) moments. RGB images are scored
    per channel and averaged.
    """
    a, b = _check_pair(ref, test)
    if a.ndim not in (2, 3) or a.shape[0] < window or a.shape[1] < window:
        raise ValueError(f"image of shape {a.shape} is smaller than the {window}x{window} window")
    if a.ndim == 2:
        return _ssim_plane(a, b, window)
    return float(np.mean([_ssim_plane(a[..., ch], b[..., ch], window) for ch in range(a.shape[2])]))
