"""Empirical distribution functions and window statistics.

The step distribution of a window uses the strict convention F(x) = (mass of
values < x), so F is a left-continuous nondecreasing step function with unit
total mass.  All statistics are finite-window estimates; asymptotic claims
are surfaced through stability diagnostics, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import (
    CapacityError,
    DegenerateWindowError,
    DomainError,
    WindowRangeError,
)
from .seqgen import SequenceWindow


@dataclass(frozen=True, eq=False)
class EDF:
    """Step distribution: breakpoints x_1 < ... < x_J with cumulative masses.

    cum[j] is the total mass at breakpoints up to and including x_j, so
    F(x) = cum[#breakpoints < x] with F(x) = 0 left of x_1.
    """

    breakpoints: np.ndarray
    cum: np.ndarray

    def __init__(self, breakpoints, cum):
        bp = np.asarray(breakpoints, dtype=float).copy()
        cm = np.asarray(cum, dtype=float).copy()
        if bp.ndim != 1 or bp.size < 1 or bp.size != cm.size:
            raise ValueError("breakpoints and cum must be equal-length 1-d arrays")
        if not (np.diff(bp) > 0).all():
            raise ValueError("breakpoints must be strictly increasing")
        if (np.diff(cm) < 0).any() or abs(cm[-1] - 1.0) > 1e-9:
            raise ValueError("cum must be nondecreasing with final mass 1")
        bp.setflags(write=False)
        cm.setflags(write=False)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "cum", cm)

    @classmethod
    def from_values(cls, values) -> "EDF":
        vals = np.asarray(values, dtype=float)
        bp, counts = np.unique(vals, return_counts=True)
        return cls(bp, np.cumsum(counts) / vals.size)

    @classmethod
    def point_mass(cls, x: float) -> "EDF":
        return cls(np.array([float(x)]), np.array([1.0]))

    @property
    def jumps(self) -> np.ndarray:
        return np.diff(self.cum, prepend=0.0)

    def __call__(self, x) -> float | np.ndarray:
        """Mass strictly below x."""
        idx = np.searchsorted(self.breakpoints, x, side="left")
        padded = np.concatenate(([0.0], self.cum))
        out = padded[idx]
        return float(out) if np.isscalar(x) else out

    def mass_upto(self, x) -> float | np.ndarray:
        """Mass at or below x (the right limit F(x+))."""
        idx = np.searchsorted(self.breakpoints, x, side="right")
        padded = np.concatenate(([0.0], self.cum))
        out = padded[idx]
        return float(out) if np.isscalar(x) else out

    def mean(self) -> float:
        return float(np.sum(self.breakpoints * self.jumps))


def edf(w: SequenceWindow) -> EDF:
    """Empirical step distribution of the window, F(x) = #{n : v(n) < x} / N."""
    return EDF.from_values(w.values)


def uniform_edf(n: int) -> EDF:
    """The n-point grid distribution with atoms at i/n, i = 0..n-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return EDF(np.arange(n) / n, np.arange(1, n + 1) / n)


@dataclass
class MomentSummary:
    """Window mean and dispersion with a half-window stability diagnostic."""

    mean: float
    dispersion: float
    n_used: int
    stability_gap: float


def moments(w: SequenceWindow) -> MomentSummary:
    vals = w.values
    m = float(vals.mean())
    d2 = float(np.mean((vals - m) ** 2))
    half = vals[: max(1, len(vals) // 2)]
    return MomentSummary(m, d2, len(vals), abs(m - float(half.mean())))


def linearity_check(v: SequenceWindow, w: SequenceWindow, a: float, b: float) -> float:
    """|E_N(a v + b w) - a E_N(v) - b E_N(w)|; zero up to float roundoff."""
    if len(v) != len(w):
        raise WindowRangeError(f"length mismatch: {len(v)} vs {len(w)}")
    lhs = float(np.mean(a * v.values + b * w.values))
    return abs(lhs - (a * float(v.values.mean()) + b * float(w.values.mean())))


def _apply(g: Callable, xs: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(g(xs), dtype=float)
        if out.shape != xs.shape:
            raise TypeError
    except Exception:
        try:
            out = np.array([g(float(x)) for x in xs], dtype=float)
        except Exception as e:
            raise DomainError(f"test function failed on values: {e}") from e
    if not np.isfinite(out).all():
        raise DomainError("test function is not finite on the required range")
    return out


def stieltjes_mean(F: EDF, g: Callable[[float], float]) -> float:
    """Exact Stieltjes integral of g against the step distribution."""
    return float(np.sum(_apply(g, F.breakpoints) * F.jumps))


class Correlation(NamedTuple):
    rho: float
    alpha: float
    beta: float


def correlation(v: SequenceWindow, w: SequenceWindow) -> Correlation:
    """Window correlation coefficient plus the regression line w ~ alpha v + beta.

    rho carries the absolute-value numerator; the signed slope alpha keeps the
    direction, so anticorrelated pairs show rho = 1 with alpha < 0.
    """
    if len(v) != len(w):
        raise WindowRangeError(f"length mismatch: {len(v)} vs {len(w)}")
    ev, ew = float(v.values.mean()), float(w.values.mean())
    dv = v.values - ev
    dw = w.values - ew
    d2v = float(np.mean(dv * dv))
    d2w = float(np.mean(dw * dw))
    if d2v == 0.0:
        raise DegenerateWindowError("v")
    if d2w == 0.0:
        raise DegenerateWindowError("w")
    cov = float(np.mean(dv * dw))
    rho = abs(cov) / (np.sqrt(d2v) * np.sqrt(d2w))
    alpha = cov / d2v
    return Correlation(float(rho), float(alpha), float(ew - alpha * ev))


def chebyshev_check(w: SequenceWindow, eps: float) -> tuple[float, float]:
    """(observed tail fraction, dispersion bound) for deviations > eps."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    s = moments(w)
    lhs = float(np.mean(np.abs(w.values - s.mean) > eps))
    return lhs, s.dispersion / eps**2


def _ramp(c: float, width: float = 0.1) -> Callable:
    def g(x):
        return np.clip((np.asarray(x, dtype=float) - c) / width, 0.0, 1.0)

    return g


# versioned default family so reported statistics are reproducible; tuned to
# unit-interval windows (monomials plus piecewise-linear ramps)
TEST_FAMILY_VERSION = "monomials+ramps/v1"
DEFAULT_TEST_FAMILY: tuple[tuple[str, Callable], ...] = (
    ("x", lambda x: np.asarray(x, dtype=float)),
    ("x^2", lambda x: np.asarray(x, dtype=float) ** 2),
    ("x^3", lambda x: np.asarray(x, dtype=float) ** 3),
    ("ramp@0.25", _ramp(0.25)),
    ("ramp@0.50", _ramp(0.50)),
    ("ramp@0.75", _ramp(0.75)),
)


@dataclass
class IndependenceReport:
    """Max deviation over a family of product tests, with the full table."""

    statistic: float
    family: str
    verdict_threshold: float
    table: tuple[tuple[str, str, float], ...]

    @property
    def passed(self) -> bool:
        return self.statistic <= self.verdict_threshold


def statistical_independence_stat(
    v: SequenceWindow,
    w: SequenceWindow,
    family: Sequence[tuple[str, Callable]] | None = None,
    verdict_threshold: float = 0.02,
) -> IndependenceReport:
    """Max over (g, g1) pairs of |E_N(g(v)) E_N(g1(w)) - E_N(g(v) g1(w))|."""
    if len(v) != len(w):
        raise WindowRangeError(f"length mismatch: {len(v)} vs {len(w)}")
    fam = tuple(family) if family is not None else DEFAULT_TEST_FAMILY
    label = TEST_FAMILY_VERSION if family is None else f"custom[{len(fam)}]"
    gv = [(name, _apply(g, v.values)) for name, g in fam]
    g1w = [(name, _apply(g, w.values)) for name, g in fam]
    table = []
    for name_g, a in gv:
        ea = float(a.mean())
        for name_g1, b in g1w:
            dev = abs(ea * float(b.mean()) - float(np.mean(a * b)))
            table.append((name_g, name_g1, dev))
    stat = max(dev for _, _, dev in table)
    return IndependenceReport(stat, label, verdict_threshold, tuple(table))


def unit_interval_grid(k: int = 10) -> tuple[tuple[float, float], ...]:
    """k equal half-open cells covering [0, 1)."""
    return tuple((i / k, (i + 1) / k) for i in range(k))


def _default_grid(w: SequenceWindow, k: int = 10) -> tuple[tuple[float, float], ...]:
    lo, hi = w.bounds
    if 0.0 <= lo and hi <= 1.0 and float(w.values.max()) < 1.0:
        return unit_interval_grid(k)
    span = hi - lo or 1.0
    top = hi + 1e-9 * span
    return tuple((lo + i * (top - lo) / k, lo + (i + 1) * (top - lo) / k) for i in range(k))


def interval_independence_stat(
    v: SequenceWindow,
    w: SequenceWindow,
    grid: tuple[Sequence[tuple[float, float]], Sequence[tuple[float, float]]] | None = None,
    verdict_threshold: float = 0.02,
) -> IndependenceReport:
    """Max over interval pairs (I, I1) of |freq(v in I, w in I1) - freq(v in I) freq(w in I1)|."""
    if len(v) != len(w):
        raise WindowRangeError(f"length mismatch: {len(v)} vs {len(w)}")
    if grid is None:
        grid_v, grid_w = _default_grid(v), _default_grid(w)
    else:
        grid_v, grid_w = grid
    masks_v = [(iv, (v.values >= iv[0]) & (v.values < iv[1])) for iv in grid_v]
    masks_w = [(iw, (w.values >= iw[0]) & (w.values < iw[1])) for iw in grid_w]
    n = len(v)
    table = []
    for iv, mv in masks_v:
        fv = int(mv.sum()) / n
        for iw, mw in masks_w:
            fw = int(mw.sum()) / n
            joint = np.count_nonzero(mv & mw) / n
            table.append(
                (f"[{iv[0]:g},{iv[1]:g})", f"[{iw[0]:g},{iw[1]:g})", abs(joint - fv * fw))
            )
    stat = max(dev for _, _, dev in table)
    return IndependenceReport(
        stat, f"intervals {len(grid_v)}x{len(grid_w)}", verdict_threshold, tuple(table)
    )


def region_density(
    seqs: Sequence[SequenceWindow],
    region: Sequence[Sequence[tuple[float, float]]],
) -> float:
    """Frequency of n with (v_1(n), ..., v_k(n)) inside a union of closed boxes.

    Each box is one (lo, hi) pair per coordinate.
    """
    if not seqs:
        raise ValueError("need at least one window")
    n = len(seqs[0])
    if any(len(s) != n for s in seqs):
        raise WindowRangeError("windows must share a common length")
    inside = np.zeros(n, dtype=bool)
    for box in region:
        if len(box) != len(seqs):
            raise ValueError(f"box has {len(box)} sides for {len(seqs)} windows")
        m = np.ones(n, dtype=bool)
        for (lo, hi), s in zip(box, seqs):
            m &= (s.values >= lo) & (s.values <= hi)
        inside |= m
    return float(inside.mean())


def convolve_edf(F: EDF, F1: EDF, max_atoms: int = 4_000_000) -> EDF:
    """Distribution of the sum of two independent step distributions.

    Exact: atoms at all pairwise breakpoint sums with product masses,
    coalescing equal sums.  The caller must pre-coarsen inputs whose
    atom product exceeds `max_atoms`.
    """
    j1, j2 = F.breakpoints.size, F1.breakpoints.size
    if j1 * j2 > max_atoms:
        raise CapacityError(f"{j1} x {j2} atoms exceed the cap {max_atoms}")
    sums = np.add.outer(F.breakpoints, F1.breakpoints).ravel()
    masses = np.multiply.outer(F.jumps, F1.jumps).ravel()
    bp, inverse = np.unique(sums, return_inverse=True)
    mass = np.bincount(inverse, weights=masses, minlength=bp.size)
    cum = np.minimum(np.cumsum(mass), 1.0)
    cum[-1] = 1.0  # pin the total against accumulated roundoff
    return EDF(bp, cum)


def sup_norm(w: SequenceWindow) -> float:
    """Largest |v(n)| over the window."""
    return float(np.abs(w.values).max())


def edf_sup_distance(F: EDF, G: EDF) -> float:
    """sup over x of |F(x) - G(x)| for two step distributions."""
    xs = np.union1d(F.breakpoints, G.breakpoints)
    left = np.abs(F(xs) - G(xs)).max()
    right = np.abs(F.mass_upto(xs) - G.mass_upto(xs)).max()
    return float(max(left, right))
