from .kmeans import KMeansConfig, KMeansResult, kmeans_quantize
from .pnm import PnmError, load_pnm, save_pnm
from .quality import psnr, ssim
from .rooters import Rooter, get_rooter
from .sobel import sobel_magnitude, sobel_magnitude_reference
from .synth import natural_gray, natural_rgb

__all__ = [
    "KMeansConfig",
    "KMeansResult",
    "PnmError",
    "Rooter",
    "get_rooter",
    "kmeans_quantize",
    "load_pnm",
    "natural_gray",
    "natural_rgb",
    "psnr",
    "save_pnm",
    "sobel_magnitude",
    "sobel_magnitude_reference",
    "ssim",
]
