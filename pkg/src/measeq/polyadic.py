"""Exact polyadic metric, congruence-continuity analysis, and Haar averaging.

The distance between integers is 1 minus the sum of 2^-n over the divisors n
of their difference, kept exact as a dyadic rational.  Sequences that vary
little across congruence classes extend to the completion; points of the
completion are truncated to coherent residue chains along a modulus ladder.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Sequence

import numpy as np

from .density import APSet, FACTORIAL_LADDER
from .errors import ContinuityBudgetError, DiagnosticError, ResolutionError
from .primes import divisors
from .seqgen import PeriodicTable, SequenceWindow

__all__ = [
    "DyadicRational",
    "OmegaPoint",
    "ContinuityProfile",
    "ExceptionalSet",
    "HaarTrace",
    "polyadic_distance",
    "p_continuity_profile",
    "weak_continuity_profile",
    "periodize",
    "period_mean",
    "haar_integral",
    "sample_omega",
    "extend_eval",
    "FACTORIAL_LADDER",
]


@total_ordering
@dataclass(frozen=True)
class DyadicRational:
    """numerator / 2^exponent, normalized so the numerator is odd (or zero)."""

    numerator: int
    exponent: int

    def __init__(self, numerator: int, exponent: int = 0):
        num, exp = int(numerator), int(exponent)
        if exp < 0:
            raise ValueError("exponent must be >= 0")
        if num == 0:
            exp = 0
        else:
            while num % 2 == 0 and exp > 0:
                num //= 2
                exp -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def scaled_numerator(self, exponent: int) -> int:
        """Numerator after rescaling to the given (larger) exponent."""
        if exponent < self.exponent:
            raise ValueError("cannot rescale to a smaller exponent")
        return self.numerator << (exponent - self.exponent)

    def __float__(self) -> float:
        return float(self.as_fraction())

    def __lt__(self, other: "DyadicRational") -> bool:
        e = max(self.exponent, other.exponent)
        return self.scaled_numerator(e) < other.scaled_numerator(e)

    def __add__(self, other: "DyadicRational") -> "DyadicRational":
        e = max(self.exponent, other.exponent)
        return DyadicRational(self.scaled_numerator(e) + other.scaled_numerator(e), e)

    def __sub__(self, other: "DyadicRational") -> "DyadicRational":
        e = max(self.exponent, other.exponent)
        return DyadicRational(self.scaled_numerator(e) - other.scaled_numerator(e), e)

    def __repr__(self) -> str:
        return f"{self.numerator}/2^{self.exponent}"


def polyadic_distance(a: int, b: int) -> DyadicRational:
    """Exact distance: 1 - sum of 2^-n over the divisors n of |a - b|.

    The defining series charges 2^-n for every n not dividing the difference;
    the complementary divisor sum is finite and exact.
    """
    d = abs(int(a) - int(b))
    if d == 0:
        return DyadicRational(0, 0)
    num = (1 << d) - sum(1 << (d - n) for n in divisors(d))
    return DyadicRational(num, d)


@dataclass(frozen=True)
class OmegaPoint:
    """Coherent residue chain along a divisibility ladder of levels."""

    levels: tuple[int, ...]
    residues: tuple[int, ...]

    def __post_init__(self):
        lv, rs = self.levels, self.residues
        if not lv or len(lv) != len(rs):
            raise ValueError("levels and residues must be equal-length and nonempty")
        for a, b in zip(lv, lv[1:]):
            if b <= a or b % a:
                raise ValueError(f"levels must increase by divisibility ({a} -> {b})")
        for m, r in zip(lv, rs):
            if not 0 <= r < m:
                raise ValueError(f"residue {r} out of range for level {m}")
        for i in range(len(lv) - 1):
            if rs[i + 1] % lv[i] != rs[i]:
                raise ValueError(f"incoherent residues at levels {lv[i]} | {lv[i+1]}")

    def residue_mod(self, m: int) -> int:
        """The point's residue mod m, for any m dividing some ladder level."""
        for lev, r in zip(self.levels, self.residues):
            if lev % m == 0:
                return r % m
        raise ResolutionError(f"no ladder level is divisible by {m}", needed=m)


def sample_omega(seed: int, ladder: Sequence[int]) -> OmegaPoint:
    """Haar-uniform coherent residues along the ladder, deterministic in the seed.

    The first residue is uniform mod the first level; each refinement adds a
    uniform digit, so every class s + (m) at level m has probability 1/m.
    """
    rng = random.Random(seed)
    levels = tuple(int(m) for m in ladder)
    r = rng.randrange(levels[0])
    residues = [r]
    for prev, nxt in zip(levels, levels[1:]):
        r = r + prev * rng.randrange(nxt // prev)
        residues.append(r)
    return OmegaPoint(levels, tuple(residues))


def _eval(h, n: int) -> float:
    if hasattr(h, "eval"):
        return float(h.eval(n))
    return float(h(n))


def _eval_block(h, m: int) -> np.ndarray:
    """Values h(0), ..., h(m-1), vectorized through the handle when possible."""
    if hasattr(h, "window") and m > 1:
        head = np.array([_eval(h, 0)])
        return np.concatenate([head, h.window(m - 1).values])
    return np.array([_eval(h, s) for s in range(m)], dtype=float)


def periodize(h, m: int) -> PeriodicTable:
    """The m-periodic sequence agreeing with h on 0..m-1."""
    return PeriodicTable(_eval_block(h, m))


def period_mean(h, m: int) -> float:
    """Average of h over one period: (1/m) sum of h(0..m-1)."""
    return float(_eval_block(h, m).mean())


@dataclass
class ContinuityProfile:
    """Smallest witnessed modulus per epsilon, from an exhaustive window scan.

    `class_ranges` records, per ladder modulus, the largest value spread
    inside any congruence class of the examined window.
    """

    pairs: tuple[tuple[float, int], ...]
    failures: tuple[float, ...]
    ladder: tuple[int, ...]
    window_used: int
    class_ranges: tuple[tuple[int, float], ...]

    def witness_for(self, eps: float) -> int | None:
        for e, m in self.pairs:
            if e == eps:
                return m
        return None


def _window_values(v, window_N: int | None, ladder: Sequence[int]) -> np.ndarray:
    need = 2 * max(ladder)
    if isinstance(v, SequenceWindow):
        vals = v.values
    else:
        vals = None
        if hasattr(v, "window"):
            vals = v.window(window_N or need).values
        else:
            n = window_N or need
            vals = np.array([_eval(v, i) for i in range(1, n + 1)], dtype=float)
    if vals.size < need:
        raise DiagnosticError(
            f"window of {vals.size} too short for ladder max {max(ladder)} "
            f"(need at least {need})"
        )
    return vals


def _class_spreads(vals: np.ndarray, m: int) -> np.ndarray:
    idx = np.arange(1, vals.size + 1, dtype=np.int64) % m
    mn = np.full(m, np.inf)
    mx = np.full(m, -np.inf)
    np.minimum.at(mn, idx, vals)
    np.maximum.at(mx, idx, vals)
    return mx - mn


def p_continuity_profile(
    v,
    eps_list: Sequence[float],
    ladder: Sequence[int],
    window_N: int | None = None,
) -> ContinuityProfile:
    """For each epsilon, the smallest ladder modulus m such that every pair of
    window indices congruent mod m has values within epsilon (strictly)."""
    ladder = sorted(int(m) for m in ladder)
    vals = _window_values(v, window_N, ladder)
    ranges = [(m, float(_class_spreads(vals, m).max())) for m in ladder]
    pairs, failures = [], []
    for eps in eps_list:
        for m, spread in ranges:
            if spread < eps:
                pairs.append((float(eps), m))
                break
        else:
            failures.append(float(eps))
    return ContinuityProfile(
        tuple(pairs), tuple(failures), tuple(ladder), int(vals.size), tuple(ranges)
    )


@dataclass
class ExceptionalSet:
    """Residue classes excluded to make the congruence-continuity bound hold.

    Off the classes in `aps`, congruence mod `modulus` pins window values
    within the epsilon that produced this set.  `mu_upper` is the exact
    density of the exceptional union.
    """

    aps: APSet
    mu_upper: Fraction
    modulus: int


def weak_continuity_profile(
    v,
    eps: float,
    delta: float,
    ladder: Sequence[int],
    window_N: int | None = None,
) -> ExceptionalSet:
    """First ladder level whose epsilon-violating classes have density < delta.

    The returned certificate is verified on the window only; it never claims
    anything about the infinite sequence.  Raises ContinuityBudgetError with
    the best (level, fraction) found when no level fits the budget.
    """
    ladder = sorted(int(m) for m in ladder)
    vals = _window_values(v, window_N, ladder)
    best: tuple[int, float] | None = None
    for m in ladder:
        spreads = _class_spreads(vals, m)
        bad = np.flatnonzero(spreads >= eps)
        fraction = bad.size / m
        if best is None or fraction < best[1]:
            best = (m, fraction)
        if fraction < delta:
            return ExceptionalSet(
                APSet([(int(r), m) for r in bad]), Fraction(bad.size, m), m
            )
    raise ContinuityBudgetError(best[0], best[1])


@dataclass
class HaarTrace:
    """Ladder of period means; `value` is the mean at the deepest level."""

    value: float
    levels: tuple[int, ...]
    means: tuple[float, ...]
    continuity: ContinuityProfile | None = None


def haar_integral(
    h,
    ladder: Sequence[int] = FACTORIAL_LADDER,
    check_continuity: Sequence[float] | None = None,
) -> HaarTrace:
    """Period means of h along the ladder, converging to the Haar average
    when h is congruence-continuous.  Non-settling traces are returned as-is.
    """
    ladder = sorted(int(m) for m in ladder)
    top = ladder[-1]
    vals = _eval_block(h, top)
    means = tuple(float(vals[:m].mean()) for m in ladder)
    profile = None
    if check_continuity is not None:
        profile = p_continuity_profile(h, check_continuity, ladder)
    return HaarTrace(means[-1], tuple(ladder), means, profile)


def _analytic_witness(v, eps: float) -> int | None:
    fn = getattr(v, "witness", None)
    if fn is None:
        return None
    return fn(eps)


def extend_eval(v, alpha: OmegaPoint, eps: float, profile_window: int = 4096) -> float:
    """Value of the extension of v at alpha, within eps of any representative.

    Needs a continuity witness m(eps) dividing one of alpha's ladder levels:
    from the handle's closed form when available, otherwise from a window
    scan over the ladder levels small enough to profile.
    """
    m = _analytic_witness(v, eps)
    if m is None:
        usable = [lev for lev in alpha.levels if 2 * lev <= profile_window]
        if usable:
            prof = p_continuity_profile(v, [eps], usable, window_N=profile_window)
            m = prof.witness_for(eps)
        if m is None:
            raise ResolutionError(
                f"no continuity witness for eps={eps} within the ladder"
            )
    r = alpha.residue_mod(m)
    if isinstance(v, SequenceWindow):
        rep = r if r >= 1 else r + m
        if rep > len(v):
            raise ResolutionError(f"window too short to represent class {r} mod {m}")
        return v.value(rep)
    return _eval(v, r)
