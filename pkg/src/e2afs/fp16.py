"""Bit-level IEEE-754 binary16 codec and the exact square-root oracle.

Scalar functions take and return plain ``int`` bit patterns in [0, 65535].
The ``*_array`` variants operate on numpy arrays and are used by the
sweep and image kernels.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

EXP_BITS = 5
FRAC_BITS = 10
BIAS = 15
FRAC_MASK = (1 << FRAC_BITS) - 1
EXP_MAX = (1 << EXP_BITS) - 1

POS_ZERO = 0x0000
NEG_ZERO = 0x8000
POS_INF = 0x7C00
QNAN = 0x7E00
MAX_FINITE = 0x7BFF
MAX_FINITE_VALUE = 65504.0

# Smallest magnitude that rounds to infinity (midpoint of 65504 and 65536, tie goes to even).
_OVERFLOW_THRESHOLD = 65520.0


class FpClass(enum.Enum):
    ZERO = "zero"
    SUBNORMAL = "subnormal"
    NORMAL = "normal"
    INFINITY = "infinity"
    NAN = "nan"


@dataclass(frozen=True)
class DecodedHalf:
    sign: int
    biased_exp: int
    frac: int

    @property
    def cls(self) -> FpClass:
        if self.biased_exp == 0:
            return FpClass.ZERO if self.frac == 0 else FpClass.SUBNORMAL
        if self.biased_exp == EXP_MAX:
            return FpClass.INFINITY if self.frac == 0 else FpClass.NAN
        return FpClass.NORMAL


def _check_word(w: int) -> int:
    if not 0 <= w <= 0xFFFF:
        raise ValueError(f"not a 16-bit encoding: {w!r}")
    return int(w)


def decode(w: int) -> DecodedHalf:
    w = _check_word(w)
    return DecodedHalf(w >> 15, (w >> FRAC_BITS) & EXP_MAX, w & FRAC_MASK)


def encode(d: DecodedHalf) -> int:
    if d.sign not in (0, 1):
        raise ValueError(f"sign out of range: {d.sign}")
    if not 0 <= d.biased_exp <= EXP_MAX:
        raise ValueError(f"biased exponent out of range: {d.biased_exp}")
    if not 0 <= d.frac <= FRAC_MASK:
        raise ValueError(f"fraction out of range: {d.frac}")
    return (d.sign << 15) | (d.biased_exp << FRAC_BITS) | d.frac


def classify(w: int) -> FpClass:
    return decode(w).cls


def to_real(w: int) -> float:
    """Exact value of the encoding. Infinity and NaN come back as ``math.inf`` / ``math.nan``."""
    d = decode(w)
    cls = d.cls
    if cls is FpClass.NAN:
        return math.nan
    if cls is FpClass.INFINITY:
        mag = math.inf
    elif cls is FpClass.NORMAL:
        mag = math.ldexp(1024 + d.frac, d.biased_exp - BIAS - FRAC_BITS)
    else:
        mag = math.ldexp(d.frac, 1 - BIAS - FRAC_BITS)
    return -mag if d.sign else mag


def from_real_rne(x: float) -> int:
    """Nearest binary16 encoding of ``x``, ties to even; overflow goes to infinity."""
    x = float(x)
    if math.isnan(x):
        return QNAN
    sign = 1 if math.copysign(1.0, x) < 0 else 0
    a = abs(x)
    if a >= _OVERFLOW_THRESHOLD:
        return (sign << 15) | POS_INF
    if a == 0.0:
        return sign << 15
    _, e = math.frexp(a)
    exp = e - 1
    if exp < 1 - BIAS:
        # subnormal range: quantum is 2^-24; n == 1024 lands on the smallest normal
        n = round(math.ldexp(a, BIAS - 1 + FRAC_BITS))
        return (sign << 15) | n
    n = round(math.ldexp(a, FRAC_BITS - exp))
    if n == 2048:
        n = 1024
        exp += 1
    return (sign << 15) | ((exp + BIAS) << FRAC_BITS) | (n - 1024)


def exact_sqrt(w: int) -> float:
    """Correctly rounded binary64 square root of a non-negative finite encoding."""
    d = decode(w)
    cls = d.cls
    if cls in (FpClass.INFINITY, FpClass.NAN):
        raise ValueError(f"exact_sqrt needs a finite input, got {cls.value} (0x{w:04X})")
    if d.sign and cls is not FpClass.ZERO:
        raise ValueError(f"exact_sqrt of a negative value (0x{w:04X})")
    return math.sqrt(abs(to_real(w)))


def to_real_array(bits) -> np.ndarray:
    """Vectorized ``to_real``; returns float64."""
    return np.asarray(bits, dtype=np.uint16).view(np.float16).astype(np.float64)


def from_real_rne_array(x, saturate: bool = False) -> np.ndarray:
    """Vectorized ``from_real_rne`` on float64 input.

    With ``saturate`` set, magnitudes above the largest finite half are
    clamped to 65504 before rounding instead of overflowing to infinity.
    """
    x = np.asarray(x, dtype=np.float64)
    if saturate:
        x = np.clip(x, -MAX_FINITE_VALUE, MAX_FINITE_VALUE)
    with np.errstate(over="ignore"):
        return x.astype(np.float16).view(np.uint16)
