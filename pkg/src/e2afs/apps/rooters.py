"""Square rooters pluggable into the image harnesses.

Each rooter is a full 65536-entry lookup table from input encoding to
output encoding, so image kernels can root whole arrays with one gather.
"""

from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np

from ..core import e2afs_sqrt_array
from ..fp16 import POS_INF, POS_ZERO, QNAN, FpClass, decode, exact_sqrt, from_real_rne, from_real_rne_array, to_real_array


class Rooter(enum.Enum):
    EXACT = "exact"
    E2AFS = "e2afs"

    @property
    def table(self) -> np.ndarray:
        return _table(self)

    def __call__(self, w: int) -> int:
        return int(self.table[w])

    def sqrt_real(self, values) -> np.ndarray:
        """Root non-negative reals through a half-precision datapath.

        Inputs are rounded to the nearest half, saturating at 65504, rooted
        by table lookup and returned as float64.
        """
        bits = from_real_rne_array(values, saturate=True)
        return to_real_array(self.table[bits])


def exact_rooter(w: int) -> int:
    """Oracle square root rounded to the nearest half."""
    d = decode(w)
    cls = d.cls
    if cls is FpClass.NAN:
        return QNAN
    if cls is FpClass.ZERO:
        return POS_ZERO
    if d.sign:
        return QNAN
    if cls is FpClass.INFINITY:
        return POS_INF
    return from_real_rne(exact_sqrt(w))


@lru_cache(maxsize=None)
def _table(rooter: Rooter) -> np.ndarray:
    words = np.arange(1 << 16, dtype=np.uint32)
    if rooter is Rooter.E2AFS:
        table = e2afs_sqrt_array(words.astype(np.uint16))
    else:
        table = np.array([exact_rooter(int(w)) for w in words], dtype=np.uint16)
    table.setflags(write=False)
    return table


def get_rooter(name) -> Rooter:
    if isinstance(name, Rooter):
        return name
    try:
        return Rooter(str(name).lower())
    except ValueError:
        raise ValueError(f"unknown rooter {name!r}; expected one of {[r.value for r in Rooter]}") from None


__all__ = ["Rooter", "exact_rooter", "get_rooter"]
