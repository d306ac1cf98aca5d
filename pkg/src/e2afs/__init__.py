"""Bit-exact model of the E2AFS approximate half-precision square rooter."""

from .core import ApproxConstants, e2afs_sqrt, e2afs_sqrt_array, reference_sqrt_real
from .fp16 import decode, encode, exact_sqrt, from_real_rne, to_real

__version__ = "0.1.0"

__all__ = [
    "ApproxConstants",
    "decode",
    "e2afs_sqrt",
    "e2afs_sqrt_array",
    "encode",
    "exact_sqrt",
    "from_real_rne",
    "reference_sqrt_real",
    "to_real",
]
