"""Exhaustive accuracy analysis of the rooter over positive normal halves.

The sweep domain is every positive normal binary16 encoding (0x0400 through
0x7BFF, 30720 points), in ascending order. Zero, subnormals, infinities and
NaNs are excluded because relative error is undefined or meaningless there.
"""

from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .core import ApproxConstants, DEFAULT_CONSTANTS, Parity, e2afs_sqrt_array
from .fp16 import BIAS, FRAC_BITS, FRAC_MASK, to_real, to_real_array

FIRST_NORMAL = 0x0400
LAST_NORMAL = 0x7BFF
DOMAIN_SIZE = LAST_NORMAL - FIRST_NORMAL + 1

CSV_HEADER = ("input_hex", "input_value", "exact_sqrt", "e2afs_sqrt", "abs_err", "rel_err")


@dataclass(frozen=True)
class SweepRecord:
    input: int
    exact: float
    approx: float
    abs_err: float
    rel_err: float


@dataclass(frozen=True)
class Sweep:
    """Column-oriented sweep results; iterating yields :class:`SweepRecord`."""

    inputs: np.ndarray
    exact: np.ndarray
    approx: np.ndarray

    @property
    def abs_err(self) -> np.ndarray:
        return np.abs(self.approx - self.exact)

    @property
    def rel_err(self) -> np.ndarray:
        return self.abs_err / self.exact

    def __len__(self) -> int:
        return len(self.inputs)

    def __iter__(self) -> Iterator[SweepRecord]:
        abs_err = self.abs_err
        rel_err = self.rel_err
        for i in range(len(self.inputs)):
            yield SweepRecord(
                int(self.inputs[i]),
                float(self.exact[i]),
                float(self.approx[i]),
                float(abs_err[i]),
                float(rel_err[i]),
            )

    def record(self, w: int) -> SweepRecord:
        i = int(np.searchsorted(self.inputs, w))
        if i >= len(self.inputs) or self.inputs[i] != w:
            raise KeyError(f"0x{w:04X} is not in the sweep")
        ae = abs(float(self.approx[i]) - float(self.exact[i]))
        return SweepRecord(w, float(self.exact[i]), float(self.approx[i]), ae, ae / float(self.exact[i]))


def domain() -> np.ndarray:
    return np.arange(FIRST_NORMAL, LAST_NORMAL + 1, dtype=np.uint16)


def sweep_domain(c: ApproxConstants = DEFAULT_CONSTANTS) -> Sweep:
    inputs = domain()
    # float64 sqrt is correctly rounded, and every half is exact in float64
    exact = np.sqrt(to_real_array(inputs))
    approx = to_real_array(e2afs_sqrt_array(inputs, c))
    return Sweep(inputs, exact, approx)


@dataclass(frozen=True)
class ErrorMetrics:
    med: float
    mred: float
    nmed: float
    mse: float
    edmax: float
    n: int

    def as_dict(self) -> dict:
        return asdict(self)


def _columns(records) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(records, Sweep):
        return records.exact, records.approx
    recs = list(records)
    exact = np.array([r.exact for r in recs], dtype=np.float64)
    approx = np.array([r.approx for r in recs], dtype=np.float64)
    return exact, approx


def compute_metrics(records: Sweep | Iterable[SweepRecord]) -> ErrorMetrics:
    exact, approx = _columns(records)
    n = len(exact)
    if n == 0:
        raise ValueError("compute_metrics needs at least one record")
    if np.any(exact <= 0):
        raise ValueError("exact values must be positive")
    abs_err = np.abs(approx - exact)
    med = math.fsum(abs_err) / n
    return ErrorMetrics(
        med=med,
        mred=math.fsum(abs_err / exact) / n,
        nmed=med / float(exact.max()),
        mse=math.fsum(abs_err * abs_err) / n,
        edmax=float(abs_err.max()),
        n=n,
    )


def emit_sweep_csv(records: Sweep | Iterable[SweepRecord], path) -> Path:
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for rec in records:
                writer.writerow(
                    (
                        f"{rec.input:04X}",
                        repr(to_real(rec.input)),
                        repr(rec.exact),
                        repr(rec.approx),
                        repr(rec.abs_err),
                        repr(rec.rel_err),
                    )
                )
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {path}: {exc.strerror or exc}") from exc
    return path


def read_sweep_csv(path) -> Sweep:
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_HEADER:
            raise ValueError(f"unexpected sweep CSV header in {path}: {header}")
        rows = list(reader)
    inputs = np.array([int(r[0], 16) for r in rows], dtype=np.uint16)
    exact = np.array([float(r[2]) for r in rows])
    approx = np.array([float(r[3]) for r in rows])
    return Sweep(inputs, exact, approx)


# -- constant searches -------------------------------------------------------
#
# Both searches work on the real-valued formula table evaluated over the
# sweep domain: Y takes the quantized values y/1024, outputs are not
# quantized. The absolute error of a point with exponent r scales with
# 2^(r_half), so each point carries that weight.


@dataclass(frozen=True)
class SearchResult:
    argmin: float
    objective: float
    resolution: float


@dataclass(frozen=True)
class _Grid:
    Y: np.ndarray
    odd: np.ndarray
    scale: np.ndarray
    exact: np.ndarray
    base: np.ndarray
    true_sig: np.ndarray


@lru_cache(maxsize=1)
def _grid() -> _Grid:
    w = domain().astype(np.int64)
    r = (w >> FRAC_BITS) - BIAS
    Y = (w & FRAC_MASK) / float(1 << FRAC_BITS)
    odd = (r & 1) == 1
    scale = np.ldexp(1.0, r >> 1)
    exact = np.sqrt(to_real_array(w.astype(np.uint16)))
    # uncompensated significands and the true significand they approximate
    base = np.where(odd, 1.5 * (1 + Y / 4), 1 + Y / 2)
    true_sig = exact / scale
    return _Grid(Y, odd, scale, exact, base, true_sig)


def _fitted_constants(k: float) -> tuple[float, float]:
    """Mean residual of the uncompensated formula over each high cell.

    Returned as the subtracted significand offset per parity; zero when a
    cell is empty.
    """
    g = _grid()
    high = g.Y >= k
    offsets = []
    for odd in (False, True):
        m = high & (g.odd == odd)
        offsets.append(float(np.mean(g.base[m] - g.true_sig[m])) if m.any() else 0.0)
    return offsets[0], offsets[1]


@lru_cache(maxsize=None)
def _breakpoint_objective_by_split(n_low: int) -> float:
    g = _grid()
    k = n_low / float(1 << FRAC_BITS)
    off_even, off_odd = _fitted_constants(k)
    high = g.Y >= k
    offset = np.where(high, np.where(g.odd, off_odd, off_even), 0.0)
    approx = g.scale * (g.base - offset)
    return math.fsum(np.abs(approx - g.exact)) / len(approx)


def breakpoint_objective(k: float) -> float:
    """Global MED with split ``k`` and high-cell constants refit as the mean residual."""
    # only the number of quantized Y values below k matters
    n_low = int(np.ceil(k * (1 << FRAC_BITS) - 1e-9))
    return _breakpoint_objective_by_split(min(max(n_low, 0), 1 << FRAC_BITS))


def _grid_points(resolution: float, lo: float, hi: float, include_lo: bool) -> np.ndarray:
    if not resolution > 0:
        raise ValueError(f"resolution must be positive, got {resolution}")
    start = math.ceil(lo / resolution - 1e-9)
    if not include_lo and start * resolution <= lo + 1e-12:
        start += 1
    stop = math.ceil(hi / resolution - 1e-9)  # exclusive
    idx = np.arange(start, stop)
    if idx.size == 0:
        raise ValueError(f"no grid points in ({lo}, {hi}) at resolution {resolution}")
    return np.round(idx * resolution, 12)


def search_breakpoint(resolution: float = 1e-3) -> SearchResult:
    ks = _grid_points(resolution, 0.0, 1.0, include_lo=False)
    values = np.array([breakpoint_objective(k) for k in ks])
    i = int(np.argmin(values))
    return SearchResult(float(ks[i]), float(values[i]), resolution)


def _cell_terms(parity: Parity) -> tuple[np.ndarray, np.ndarray]:
    """Per-point (target, weight): the cell MED at constant c is mean(weight * |c - target|)."""
    g = _grid()
    m = (g.Y >= 0.5) & (g.odd == (parity is Parity.ODD))
    if parity is Parity.EVEN:
        # error = scale*(base - c) - exact
        weight = g.scale[m]
        target = (g.scale[m] * g.base[m] - g.exact[m]) / weight
    else:
        # error = scale*1.5*(1 + (Y + c)/4) - exact = scale*base - exact + 0.375*scale*c
        weight = 0.375 * g.scale[m]
        target = (g.exact[m] - g.scale[m] * g.base[m]) / weight
    return target, weight


def _weighted_l1(target: np.ndarray, weight: np.ndarray, cs: np.ndarray) -> np.ndarray:
    """mean_i weight_i * |c - target_i| for every c, via sorted prefix sums."""
    order = np.argsort(target, kind="stable")
    t = target[order]
    w = weight[order]
    cw = np.concatenate(([0.0], np.cumsum(w)))
    cwt = np.concatenate(([0.0], np.cumsum(w * t)))
    j = np.searchsorted(t, cs, side="right")
    below = cs * cw[j] - cwt[j]
    above = (cwt[-1] - cwt[j]) - cs * (cw[-1] - cw[j])
    return (below + above) / len(t)


def compensation_objective(parity: Parity, c: float) -> float:
    """MED over the high-Y cell of one parity with ``c`` as its constant."""
    target, weight = _cell_terms(parity)
    return math.fsum(weight * np.abs(c - target)) / len(target)


def search_compensation(
    parity: Parity, resolution: float = 1e-4, lo: float = 0.0, hi: float = 1.0
) -> SearchResult:
    """Grid search of the high-cell constant over [lo, hi).

    For even parity c is the subtracted offset; for odd parity it is the
    term added to Y inside (Y + c)/4.
    """
    if resolution < 1e-6:
        raise ValueError(f"resolution below 1e-6 is not supported: {resolution}")
    cs = _grid_points(resolution, lo, hi, include_lo=True)
    target, weight = _cell_terms(parity)
    values = _weighted_l1(target, weight, cs)
    i = int(np.argmin(values))
    c = float(cs[i])
    return SearchResult(c, compensation_objective(parity, c), resolution)
