"""E2AFS approximate square rooter: bit-exact datapath and real-valued reference.

The datapath follows the hardware blocks in order::

    normalize -> select_path -> halve_exponent
                             -> significand_approx -> reconstruct

All arithmetic on the fraction is integer shift/add on non-negative values,
so every division is a truncating right shift.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .fp16 import (
    BIAS,
    FRAC_BITS,
    FRAC_MASK,
    POS_INF,
    POS_ZERO,
    QNAN,
    DecodedHalf,
    FpClass,
    decode,
    encode,
    to_real,
)

ONE = 1 << FRAC_BITS  # fixed-point 1.0 in the 11-bit significand


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


class Region(enum.Enum):
    LOW = "low"
    HIGH = "high"


@dataclass(frozen=True)
class NormalizedOperand:
    r: int
    y: int

    @property
    def Y(self) -> float:
        return self.y / ONE


@dataclass(frozen=True)
class PathSelector:
    parity: Parity
    region: Region


@dataclass(frozen=True)
class ApproxConstants:
    """Fixed-point constants of the datapath, as numerators over 1024."""

    comp_even: int = 46  # 0.045
    comp_odd: int = 341  # 0.3333
    breakpoint: int = 512  # Y = 0.5, i.e. the fraction MSB


@dataclass(frozen=True)
class ReferenceConstants:
    """Unquantized constants for the real-valued model."""

    comp_even: float = 0.045
    comp_odd: float = 0.3333
    breakpoint: float = 0.5


DEFAULT_CONSTANTS = ApproxConstants()
REFERENCE_CONSTANTS = ReferenceConstants()


@dataclass(frozen=True)
class ApproxOutput:
    out_biased_exp: int
    out_frac: int

    @property
    def bits(self) -> int:
        return encode(DecodedHalf(0, self.out_biased_exp, self.out_frac))

    @property
    def value(self) -> float:
        return to_real(self.bits)


def normalize(d: DecodedHalf) -> NormalizedOperand:
    if d.cls is not FpClass.NORMAL or d.sign:
        raise ValueError(f"normalize needs a positive normal operand, got {d}")
    return NormalizedOperand(d.biased_exp - BIAS, d.frac)


def select_path(n: NormalizedOperand, c: ApproxConstants = DEFAULT_CONSTANTS) -> PathSelector:
    parity = Parity.EVEN if n.r % 2 == 0 else Parity.ODD
    region = Region.HIGH if n.y >= c.breakpoint else Region.LOW
    return PathSelector(parity, region)


def halve_exponent(r: int, parity: Parity | None = None) -> int:
    """r/2 for even r, (r-1)/2 for odd r. Both are an arithmetic shift right."""
    if parity is not None and (parity is Parity.EVEN) != (r % 2 == 0):
        raise ValueError(f"parity {parity.value} does not match r={r}")
    return r >> 1


def _odd_operand(y: int, region: Region, c: ApproxConstants) -> int:
    # (y + c) is 11 bits wide before the shift
    return (y + c.comp_odd) >> 2 if region is Region.HIGH else y >> 2


def significand_approx(y: int, sel: PathSelector, c: ApproxConstants = DEFAULT_CONSTANTS) -> int:
    """11-bit fixed-point significand in [1024, 2047]."""
    if not 0 <= y <= FRAC_MASK:
        raise ValueError(f"fraction out of range: {y}")
    if (sel.region is Region.HIGH) != (y >= c.breakpoint):
        raise ValueError(f"region {sel.region.value} does not match y={y}")
    if sel.parity is Parity.EVEN:
        s = ONE + (y >> 1)
        if sel.region is Region.HIGH:
            s -= c.comp_even
        return s
    t = ONE + _odd_operand(y, sel.region, c)
    return t + (t >> 1)


def approximate(n: NormalizedOperand, c: ApproxConstants = DEFAULT_CONSTANTS) -> ApproxOutput:
    sel = select_path(n, c)
    s = significand_approx(n.y, sel, c)
    return ApproxOutput(halve_exponent(n.r, sel.parity) + BIAS, s - ONE)


def e2afs_sqrt(w: int, c: ApproxConstants = DEFAULT_CONSTANTS) -> int:
    """Approximate square root of a binary16 encoding.

    Specials: negative nonzero and NaN give 0x7E00, +-0 and subnormals
    give +0, +inf gives +inf.
    """
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
    if cls is FpClass.SUBNORMAL:
        return POS_ZERO
    return approximate(normalize(d), c).bits


def trace(w: int, c: ApproxConstants = DEFAULT_CONSTANTS) -> dict:
    """Intermediate datapath values for a positive normal input."""
    n = normalize(decode(w))
    sel = select_path(n, c)
    out = {
        "r": n.r,
        "y": n.y,
        "parity": sel.parity.value,
        "region": sel.region.value,
        "r_half": halve_exponent(n.r, sel.parity),
    }
    if sel.parity is Parity.EVEN:
        out["y_shifted"] = n.y >> 1
    else:
        out["y_shifted"] = _odd_operand(n.y, sel.region, c)
        out["t"] = ONE + out["y_shifted"]
    s = significand_approx(n.y, sel, c)
    out["significand"] = s
    out["out_biased_exp"] = out["r_half"] + BIAS
    out["out_frac"] = s - ONE
    out["bits"] = encode(DecodedHalf(0, out["out_biased_exp"], s - ONE))
    return out


def e2afs_sqrt_array(bits, c: ApproxConstants = DEFAULT_CONSTANTS) -> np.ndarray:
    """Vectorized ``e2afs_sqrt`` over an array of encodings."""
    w = np.asarray(bits, dtype=np.uint16).astype(np.int32)
    sign = w >> 15
    e = (w >> FRAC_BITS) & 0x1F
    y = w & FRAC_MASK
    r = e - BIAS
    odd = (r & 1) == 1
    high = y >= c.breakpoint

    s_even = ONE + (y >> 1) - np.where(high, c.comp_even, 0)
    t = ONE + (np.where(high, y + c.comp_odd, y) >> 2)
    s = np.where(odd, t + (t >> 1), s_even)
    out = (((r >> 1) + BIAS) << FRAC_BITS) | (s - ONE)

    out = np.where(e == 0, POS_ZERO, out)
    out = np.where((e == 0x1F) & (y == 0), POS_INF, out)
    out = np.where((sign == 1) & ((w & 0x7FFF) != 0), QNAN, out)
    out = np.where((e == 0x1F) & (y != 0), QNAN, out)
    return out.astype(np.uint16)


def reference_significand(parity: Parity, Y, c: ReferenceConstants = REFERENCE_CONSTANTS):
    """Significand of the four-cell formula table; scalar or array ``Y``.

    For odd parity the result includes the 1.5 factor standing in for sqrt(2).
    """
    Y = np.asarray(Y, dtype=np.float64)
    high = Y >= c.breakpoint
    if parity is Parity.EVEN:
        out = 1.0 + Y / 2 - np.where(high, c.comp_even, 0.0)
    else:
        out = 1.5 * (1.0 + (Y + np.where(high, c.comp_odd, 0.0)) / 4)
    return out[()] if out.ndim == 0 else out


def reference_sqrt_real(x: float, c: ReferenceConstants = REFERENCE_CONSTANTS) -> float:
    """Real-valued model: no fraction quantization, unrounded constants."""
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"reference_sqrt_real needs a positive finite input, got {x}")
    m, e = math.frexp(x)
    r = e - 1
    Y = 2 * m - 1
    parity = Parity.EVEN if r % 2 == 0 else Parity.ODD
    return math.ldexp(float(reference_significand(parity, Y, c)), r >> 1)


__all__ = [
    "ApproxConstants",
    "ApproxOutput",
    "DEFAULT_CONSTANTS",
    "NormalizedOperand",
    "Parity",
    "PathSelector",
    "REFERENCE_CONSTANTS",
    "ReferenceConstants",
    "Region",
    "approximate",
    "e2afs_sqrt",
    "e2afs_sqrt_array",
    "halve_exponent",
    "normalize",
    "reference_significand",
    "reference_sqrt_real",
    "select_path",
    "significand_approx",
    "trace",
]
