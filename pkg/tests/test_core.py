import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from e2afs.core import (
    ApproxConstants,
    NormalizedOperand,
    Parity,
    PathSelector,
    Region,
    e2afs_sqrt,
    e2afs_sqrt_array,
    halve_exponent,
    normalize,
    reference_significand,
    reference_sqrt_real,
    select_path,
    significand_approx,
    trace,
)
from e2afs.fp16 import DecodedHalf, FpClass, decode, encode, exact_sqrt, to_real

POSITIVE_NORMALS = range(0x0400, 0x7C00)


def test_constants_match_decimal_values():
    c = ApproxConstants()
    assert abs(c.comp_even / 1024 - 0.045) <= 1 / 1024
    assert abs(c.comp_odd / 1024 - 0.3333) <= 1 / 1024
    assert c.breakpoint / 1024 == 0.5


@pytest.mark.parametrize("w, r, y", [(0x785A, 15, 90), (0x3C00, 0, 0), (0x3801, -1, 1)])
def test_normalize(w, r, y):
    assert normalize(decode(w)) == NormalizedOperand(r, y)


@pytest.mark.parametrize("w", [0x0000, 0x0001, 0x7C00, 0x7E00, 0xBC00])
def test_normalize_rejects_non_normal(w):
    with pytest.raises(ValueError):
        normalize(decode(w))


def test_normalize_reproduces_value():
    for w in POSITIVE_NORMALS:
        n = normalize(decode(w))
        assert math.ldexp(1 + n.y / 1024, n.r) == to_real(w)
        assert 0 <= n.Y < 1


@pytest.mark.parametrize(
    "r, y, parity, region",
    [
        (15, 90, Parity.ODD, Region.LOW),
        (0, 512, Parity.EVEN, Region.HIGH),
        (0, 511, Parity.EVEN, Region.LOW),
        (-3, 700, Parity.ODD, Region.HIGH),
        (-2, 0, Parity.EVEN, Region.LOW),
        (-1, 1023, Parity.ODD, Region.HIGH),
    ],
)
def test_select_path(r, y, parity, region):
    assert select_path(NormalizedOperand(r, y)) == PathSelector(parity, region)


def test_region_is_fraction_msb():
    for y in range(1024):
        high = select_path(NormalizedOperand(0, y)).region is Region.HIGH
        assert high == bool(y & 0x200)


@pytest.mark.parametrize("r, expected", [(15, 7), (0, 0), (-3, -2), (-1, -1), (-14, -7), (14, 7), (1, 0)])
def test_halve_exponent(r, expected):
    parity = Parity.EVEN if r % 2 == 0 else Parity.ODD
    assert halve_exponent(r, parity) == expected
    # floor semantics keep 2^(r_half) * 1.5 bracketing the true root for odd r
    assert halve_exponent(r) == math.floor(r / 2)


def test_halve_exponent_rejects_wrong_parity():
    with pytest.raises(ValueError):
        halve_exponent(3, Parity.EVEN)


def test_significand_golden_trace():
    sel = PathSelector(Parity.ODD, Region.LOW)
    assert 90 >> 2 == 22
    assert significand_approx(90, sel) == 1569 == 1024 + 545
    assert 545 == 0b1000100001


def test_significand_examples():
    assert significand_approx(0, PathSelector(Parity.EVEN, Region.LOW)) == 1024
    assert significand_approx(1023, PathSelector(Parity.ODD, Region.HIGH)) == 2047
    assert significand_approx(512, PathSelector(Parity.EVEN, Region.HIGH)) == 1024 + 256 - 46


def test_significand_range_exhaustive():
    for y in range(1024):
        region = Region.HIGH if y >= 512 else Region.LOW
        for parity in Parity:
            s = significand_approx(y, PathSelector(parity, region))
            assert 1024 <= s <= 2047


def test_significand_rejects_inconsistent_region():
    with pytest.raises(ValueError):
        significand_approx(10, PathSelector(Parity.EVEN, Region.HIGH))
    with pytest.raises(ValueError):
        significand_approx(600, PathSelector(Parity.ODD, Region.LOW))


def fixed_point_oracle(y, parity, high):
    """The four formula cells in exact rational arithmetic, floored at each shifter."""
    if parity is Parity.EVEN:
        return 1024 + y // 2 - (46 if high else 0)
    t = 1024 + (y + (341 if high else 0)) // 4
    return t + t // 2


def test_significand_matches_floor_oracle():
    for y in range(1024):
        for parity in Parity:
            sel = select_path(NormalizedOperand(0 if parity is Parity.EVEN else 1, y))
            assert significand_approx(y, sel) == fixed_point_oracle(y, parity, y >= 512)


def test_golden_vector():
    assert e2afs_sqrt(0x785A) == 0x5A21
    assert to_real(0x5A21) == 196.125
    t = trace(0x785A)
    assert t["r"] == 15 and t["y"] == 90 and t["r_half"] == 7
    assert t["y_shifted"] == 22 and t["out_frac"] == 545 and t["out_biased_exp"] == 22


@pytest.mark.parametrize("w, out", [(0x3C00, 0x3C00), (0x3800, 0x3A00), (0x4400, 0x4000)])
def test_e2afs_examples(w, out):
    assert e2afs_sqrt(w) == out


@pytest.mark.parametrize(
    "w, out",
    [
        (0xBC00, 0x7E00),  # -1
        (0xFBFF, 0x7E00),
        (0x8001, 0x7E00),  # negative subnormal
        (0x7E00, 0x7E00),
        (0x7C01, 0x7E00),
        (0xFE00, 0x7E00),
        (0x0000, 0x0000),
        (0x8000, 0x0000),
        (0x7C00, 0x7C00),
        (0xFC00, 0x7E00),
        (0x0001, 0x0000),
        (0x03FF, 0x0000),
    ],
)
def test_specials(w, out):
    assert e2afs_sqrt(w) == out


def test_vectorized_kernel_matches_scalar_exhaustively():
    words = np.arange(1 << 16, dtype=np.uint32).astype(np.uint16)
    vec = e2afs_sqrt_array(words)
    for w in range(1 << 16):
        assert vec[w] == e2afs_sqrt(w)


def test_output_is_positive_normal_in_exponent_band():
    for w in POSITIVE_NORMALS:
        d = decode(e2afs_sqrt(w))
        assert d.sign == 0 and d.cls is FpClass.NORMAL
        assert 8 <= d.biased_exp <= 22


def test_exact_on_even_powers_of_two():
    for k in range(-7, 8):
        w = encode(DecodedHalf(0, 2 * k + 15, 0))
        assert e2afs_sqrt(w) == encode(DecodedHalf(0, k + 15, 0))


def test_relative_error_bound():
    worst = max(abs(to_real(e2afs_sqrt(w)) - exact_sqrt(w)) / exact_sqrt(w) for w in POSITIVE_NORMALS)
    assert worst <= 0.065
    # worst case is odd r with Y = 0: 1.5/sqrt(2) - 1
    assert worst == pytest.approx(1.5 / math.sqrt(2) - 1, rel=1e-12)


def test_bit_path_tracks_reference_model():
    for w in POSITIVE_NORMALS:
        n = normalize(decode(w))
        parity = Parity.EVEN if n.r % 2 == 0 else Parity.ODD
        scale = 2.0 ** (n.r >> 1)
        ref = scale * float(reference_significand(parity, n.y / 1024))
        assert abs(to_real(e2afs_sqrt(w)) - ref) <= scale * 4 / 1024


@pytest.mark.parametrize("x, expected", [(4.0, 2.0), (1.5, 1.205), (3.0, 1.8124875), (1.0, 1.0), (0.5, 0.75)])
def test_reference_sqrt_real(x, expected):
    assert reference_sqrt_real(x) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, math.inf, math.nan])
def test_reference_rejects(x):
    with pytest.raises(ValueError):
        reference_sqrt_real(x)


@given(st.integers(0x0400, 0x7BFF), st.integers(-7, 7))
def test_scale_covariance(w, k):
    d = decode(w)
    shifted = d.biased_exp + 2 * k
    if not 1 <= shifted <= 30:
        return
    base = decode(e2afs_sqrt(w))
    moved = decode(e2afs_sqrt(encode(DecodedHalf(0, shifted, d.frac))))
    assert moved.frac == base.frac
    assert moved.biased_exp == base.biased_exp + k


def test_scale_covariance_exhaustive():
    for w in POSITIVE_NORMALS:
        d = decode(w)
        if d.biased_exp + 2 <= 30:
            a, b = decode(e2afs_sqrt(w)), decode(e2afs_sqrt(w + (2 << 10)))
            assert (b.biased_exp, b.frac) == (a.biased_exp + 1, a.frac)
