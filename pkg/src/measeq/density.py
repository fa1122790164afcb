"""Asymptotic density estimation and progression-cover (Buck) measure density.

Densities of subsets of the positive integers are approximated on finite
windows [1, N].  Asymptotic density is profiled along a grid of window
sizes with liminf/limsup diagnostics; the cover measure density is bounded
from above by explicit arithmetic-progression covers (certificates) and by
residue saturation along a divisibility ladder of moduli.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import CapacityError, DiagnosticError
from .primes import is_prime, prime_mask

FACTORIAL_LADDER = (1, 2, 6, 24, 120, 720, 5040, 40320)
PRIMORIAL_LADDER = (1, 2, 6, 30, 210, 2310, 30030)

# default persistence threshold: a residue class counts as "infinitely hit"
# when the window shows at least this many hits
DEFAULT_THRESHOLD = 3


def _crt_intersect(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    """Intersection of r1+(m1) and r2+(m2) as one progression, or None."""
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    lcm = m1 // g * m2
    step = m2 // g
    if step == 1:
        return r1 % lcm, lcm
    t = ((r2 - r1) // g * pow(m1 // g, -1, step)) % step
    return (r1 + m1 * t) % lcm, lcm


@dataclass(frozen=True)
class APSet:
    """Finite union of arithmetic progressions r+(m) = {r, r+m, r+2m, ...}.

    Stored pairs are normalized to 0 <= r < m, deduplicated and sorted.
    Membership is evaluated on positive integers only.
    """

    progressions: tuple[tuple[int, int], ...]

    def __init__(self, progressions: Iterable[tuple[int, int]]):
        pairs = set()
        for r, m in progressions:
            if m < 1:
                raise ValueError(f"modulus must be >= 1, got {m}")
            if r < 0:
                raise ValueError(f"residue must be >= 0, got {r}")
            pairs.add((r % m, m))
        object.__setattr__(self, "progressions", tuple(sorted(pairs)))

    @classmethod
    def single(cls, r: int, m: int) -> "APSet":
        return cls([(r, m)])

    def __contains__(self, n: int) -> bool:
        return any(n % m == r for r, m in self.progressions)

    def mask(self, N: int) -> np.ndarray:
        """Boolean membership array for n = 1..N."""
        out = np.zeros(N, dtype=bool)
        for r, m in self.progressions:
            start = r if r >= 1 else m
            if start <= N:
                out[start - 1 :: m] = True
        return out

    def density(self) -> Fraction:
        """Exact density of the union (cached)."""
        cached = _DENSITY_CACHE.get(self.progressions)
        if cached is None:
            cached = ap_union_density(self)
            _DENSITY_CACHE[self.progressions] = cached
        return cached

    def intersects(self, other: "APSet") -> bool:
        return any(
            _crt_intersect(r1, m1, r2, m2) is not None
            for r1, m1 in self.progressions
            for r2, m2 in other.progressions
        )


_DENSITY_CACHE: dict[tuple, Fraction] = {}


def ap_union_density(s: APSet, term_limit: int = 200_000) -> Fraction:
    """Exact density of an APSet by inclusion-exclusion over lcm's.

    Empty intersections prune the subset lattice; `term_limit` bounds the
    number of visited subset nodes (CapacityError beyond it).
    """
    progs = s.progressions
    total = Fraction(0)
    visited = 0

    def descend(start: int, r: int, m: int, sign: int) -> None:
        nonlocal total, visited
        for j in range(start, len(progs)):
            visited += 1
            if visited > term_limit:
                raise CapacityError(
                    f"inclusion-exclusion exceeded {term_limit} terms"
                )
            merged = _crt_intersect(r, m, *progs[j])
            if merged is None:
                continue
            r2, m2 = merged
            total += Fraction(sign, m2)
            descend(j + 1, r2, m2, -sign)

    descend(0, 0, 1, 1)
    return total


class Predicate:
    """Membership predicate on positive integers with a vectorized window mask.

    `max_n` restricts window-backed predicates to the data they carry.
    """

    def __init__(
        self,
        fn: Callable[[int], bool],
        mask_fn: Callable[[int], np.ndarray] | None = None,
        name: str = "pred",
        max_n: int | None = None,
    ):
        self._fn = fn
        self._mask_fn = mask_fn
        self.name = name
        self.max_n = max_n

    def __call__(self, n: int) -> bool:
        return bool(self._fn(n))

    def mask(self, N: int) -> np.ndarray:
        """Boolean membership array for n = 1..N."""
        if self.max_n is not None and N > self.max_n:
            raise DiagnosticError(
                f"predicate {self.name!r} only defined up to n={self.max_n}, asked {N}"
            )
        if self._mask_fn is not None:
            return self._mask_fn(N)
        return np.fromiter((self._fn(n) for n in range(1, N + 1)), dtype=bool, count=N)

    def complement(self) -> "Predicate":
        return Predicate(
            lambda n: not self._fn(n),
            (lambda N: ~self.mask(N)) if self._mask_fn is not None else None,
            name=f"not-{self.name}",
            max_n=self.max_n,
        )

    def __repr__(self) -> str:
        return f"Predicate({self.name})"


def ap_predicate(s: APSet) -> Predicate:
    return Predicate(lambda n: n in s, s.mask, name=f"ap{list(s.progressions)}")


def squares_predicate() -> Predicate:
    def mask(N: int) -> np.ndarray:
        out = np.zeros(N, dtype=bool)
        ks = np.arange(1, isqrt(N) + 1)
        out[ks * ks - 1] = True
        return out

    return Predicate(lambda n: isqrt(n) ** 2 == n, mask, name="squares")


def primes_predicate() -> Predicate:
    return Predicate(is_prime, lambda N: prime_mask(N)[1:], name="primes")


def blocks_predicate() -> Predicate:
    """The union of dyadic blocks [4^k, 2*4^k); a set with no asymptotic density."""

    def mask(N: int) -> np.ndarray:
        out = np.zeros(N, dtype=bool)
        lo = 1
        while lo <= N:
            out[lo - 1 : min(2 * lo, N + 1) - 1] = True
            lo *= 4
        return out

    return Predicate(lambda n: n.bit_length() % 2 == 1, mask, name="blocks")


def window_level_set(w, lo: float = -np.inf, hi: float = np.inf) -> Predicate:
    """Predicate n -> v(n) in [lo, hi) for a sequence window (half-open)."""
    values = np.asarray(w.values, dtype=float)
    N = len(values)

    def mask(upto: int) -> np.ndarray:
        return (values[:upto] >= lo) & (values[:upto] < hi)

    return Predicate(
        lambda n: bool(lo <= values[n - 1] < hi),
        mask,
        name=f"level[{lo},{hi})",
        max_n=N,
    )


def count_in_window(pred, N: int) -> int:
    """Exact count of n in [1, N] satisfying the predicate."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if isinstance(pred, Predicate):
        return int(pred.mask(N).sum())
    return sum(1 for n in range(1, N + 1) if pred(n))


@dataclass
class DensityEstimate:
    """Window-profile estimate of an asymptotic density.

    `value` is None when the grid tail does not settle within `tolerance`;
    an oscillating set is reported that way on purpose.
    """

    value: float | None
    liminf_est: float
    limsup_est: float
    window_grid: tuple[int, ...]
    ratios: tuple[float, ...]
    tolerance: float


def asymptotic_density_profile(
    pred, grid: Sequence[int], tolerance: float = 1e-3
) -> DensityEstimate:
    """Counting ratios |S cap [1,N]| / N along an increasing grid of N.

    liminf/limsup estimates come from the last third of the grid; the value
    is set only when they agree within `tolerance`.
    """
    grid = [int(N) for N in grid]
    if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be nonempty and strictly increasing")
    if isinstance(pred, Predicate):
        m = pred.mask(grid[-1])
        cum = np.cumsum(m)
        counts = [int(cum[N - 1]) for N in grid]
    else:
        counts = []
        c = 0
        prev = 0
        for N in grid:
            c += sum(1 for n in range(prev + 1, N + 1) if pred(n))
            counts.append(c)
            prev = N
    ratios = tuple(c / N for c, N in zip(counts, grid))
    tail = ratios[-max(1, len(ratios) // 3) :]
    lo, hi = min(tail), max(tail)
    value = (lo + hi) / 2 if hi - lo <= tolerance else None
    return DensityEstimate(value, lo, hi, tuple(grid), ratios, tolerance)


def residue_saturation(
    pred, level_m: int, window_N: int, threshold: int = DEFAULT_THRESHOLD
) -> Fraction:
    """Fraction of residue classes mod level_m hit >= threshold times in the window.

    Approximates the measure of the closure at that level; weakly decreasing
    along any divisibility ladder by construction.
    """
    if window_N < threshold * level_m:
        raise DiagnosticError(
            f"window {window_N} too short for level {level_m} at threshold {threshold}"
        )
    hits = _hit_indices(pred, window_N)
    return _saturation_from_hits(hits, level_m, threshold)


def _hit_indices(pred, window_N: int) -> np.ndarray:
    if isinstance(pred, Predicate):
        return np.flatnonzero(pred.mask(window_N)).astype(np.int64) + 1
    return np.array(
        [n for n in range(1, window_N + 1) if pred(n)], dtype=np.int64
    )


def _saturation_from_hits(hits: np.ndarray, m: int, threshold: int) -> Fraction:
    if hits.size == 0:
        return Fraction(0, 1)
    counts = np.bincount(hits % m, minlength=m)
    return Fraction(int((counts >= threshold).sum()), m)


@dataclass
class CoverCertificate:
    """An arithmetic-progression cover of S verified on [1, verified_upto].

    `cost` is the exact sum of reciprocal moduli; it upper-bounds the cover
    measure density of S insofar as the window classified residues correctly.
    """

    cover: APSet
    cost: Fraction
    verified_upto: int
    level: int


def buck_upper(
    pred,
    ladder: Sequence[int] = FACTORIAL_LADDER,
    window_N: int = 100_000,
    threshold: int = DEFAULT_THRESHOLD,
    require_recent: bool = True,
) -> CoverCertificate:
    """Cheapest progression-cover certificate found along the ladder.

    At each ladder modulus m, residue classes hit persistently (>= threshold
    hits, last hit in the final third of the window when `require_recent`)
    enter the cover as r+(m); remaining stragglers are covered per class by
    whichever is cheaper, the class progression or singleton progressions at
    the largest ladder modulus.
    """
    certs = buck_upper_per_level(pred, ladder, window_N, threshold, require_recent)
    return min(certs, key=lambda c: c.cost)


def buck_upper_per_level(
    pred,
    ladder: Sequence[int] = FACTORIAL_LADDER,
    window_N: int = 100_000,
    threshold: int = DEFAULT_THRESHOLD,
    require_recent: bool = True,
) -> list[CoverCertificate]:
    """One certificate per usable ladder level (see `buck_upper`)."""
    usable = [m for m in ladder if window_N >= threshold * m]
    if not usable:
        raise DiagnosticError(
            f"window {window_N} cannot classify residues at any ladder level"
        )
    hits = _hit_indices(pred, window_N)
    big_m = max(ladder)
    recent_cut = (2 * window_N) // 3
    out = []
    for m in usable:
        res = hits % m if hits.size else np.zeros(0, dtype=np.int64)
        counts = np.bincount(res, minlength=m)
        persistent = counts >= threshold
        if require_recent and hits.size:
            last = np.zeros(m, dtype=np.int64)
            np.maximum.at(last, res, hits)
            persistent &= last > recent_cut
        pairs = [(int(r), m) for r in np.flatnonzero(persistent)]
        cost = Fraction(len(pairs), m)
        # stragglers grouped by class: class progression vs singletons, cheaper wins
        strag = hits[~persistent[res]] if hits.size else hits
        if strag.size:
            sres = strag % m
            for r in np.unique(sres):
                members = strag[sres == r]
                k = len(np.unique(members % big_m))
                if Fraction(1, m) <= Fraction(k, big_m):
                    pairs.append((int(r), m))
                    cost += Fraction(1, m)
                else:
                    for x in np.unique(members % big_m):
                        pairs.append((int(x), big_m))
                    cost += Fraction(k, big_m)
        cover = APSet(pairs)
        _verify_cover(cover, hits, window_N)
        out.append(CoverCertificate(cover, cost, window_N, m))
    return out


def _verify_cover(cover: APSet, hits: np.ndarray, N: int) -> None:
    if hits.size == 0:
        return
    covered = cover.mask(N)
    if not covered[hits - 1].all():
        missing = hits[~covered[hits - 1]][:5]
        raise AssertionError(f"cover misses window elements {missing.tolist()}")


@dataclass
class MeasurabilityReport:
    """Saturation-based upper estimates for S and its complement per level.

    gap[i] = upper_set[i] + upper_complement[i] - 1; a set looks measurable
    when the gap at the deepest level falls within the tolerance.
    """

    levels: tuple[int, ...]
    upper_set: tuple[Fraction, ...]
    upper_complement: tuple[Fraction, ...]
    gaps: tuple[Fraction, ...]
    tolerance: float

    @property
    def gap(self) -> Fraction:
        return self.gaps[-1]

    @property
    def measurable(self) -> bool:
        return float(self.gap) <= self.tolerance


def buck_measurability_check(
    pred,
    ladder: Sequence[int] = FACTORIAL_LADDER,
    window_N: int = 100_000,
    threshold: int = DEFAULT_THRESHOLD,
    tolerance: float = 0.05,
) -> MeasurabilityReport:
    """Triage for measurability: saturation of S and of its complement per level."""
    usable = [m for m in ladder if window_N >= threshold * m]
    if not usable:
        raise DiagnosticError(
            f"window {window_N} cannot classify residues at any ladder level"
        )
    if isinstance(pred, Predicate):
        mask = pred.mask(window_N)
    else:
        mask = np.fromiter(
            (pred(n) for n in range(1, window_N + 1)), dtype=bool, count=window_N
        )
    hits_s = np.flatnonzero(mask).astype(np.int64) + 1
    hits_c = np.flatnonzero(~mask).astype(np.int64) + 1
    up_s, up_c, gaps = [], [], []
    for m in usable:
        a = _saturation_from_hits(hits_s, m, threshold)
        b = _saturation_from_hits(hits_c, m, threshold)
        up_s.append(a)
        up_c.append(b)
        gaps.append(a + b - 1)
    return MeasurabilityReport(
        tuple(usable), tuple(up_s), tuple(up_c), tuple(gaps), tolerance
    )
