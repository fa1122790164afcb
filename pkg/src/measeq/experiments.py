"""Composite experiments: uniform distribution in the integers, resampling
invariance of means, central-limit and weak-law transfers, and almost-sure
uniform distribution of extended sequences at sampled points.

Every experiment validates its hypotheses first and refuses to run (GateError)
on inputs that fail them; reports are bit-reproducible given the same seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd
from typing import Callable, Sequence

import numpy as np

from .dist import interval_independence_stat, moments, sup_norm
from .errors import DiagnosticError, GateError
from .polyadic import FACTORIAL_LADDER, extend_eval, sample_omega, weak_continuity_profile
from .errors import ContinuityBudgetError
from .primes import first_primes
from .seqgen import BaseChain, SequenceWindow, VdcSequence, subsequence

_SQRT2 = math.sqrt(2.0)


def normal_cdf(x) -> np.ndarray | float:
    """Standard normal CDF via the error function (double-precision accurate)."""
    xs = np.asarray(x, dtype=float)
    out = np.array([0.5 * (1.0 + math.erf(t / _SQRT2)) for t in np.atleast_1d(xs)])
    return float(out[0]) if xs.ndim == 0 else out


def kolmogorov_distance(values, cdf: Callable) -> float:
    """Two-sided sup distance between the sample EDF and a continuous CDF."""
    x = np.sort(np.asarray(values, dtype=float))
    n = x.size
    c = np.asarray(cdf(x), dtype=float)
    below = np.abs(c - np.arange(n) / n).max()
    above = np.abs(c - np.arange(1, n + 1) / n).max()
    return float(max(below, above))


def identity_indices(N: int) -> np.ndarray:
    return np.arange(1, N + 1, dtype=np.int64)


def pair_swap_indices(N: int) -> np.ndarray:
    """2, 1, 4, 3, ...; the final index stays put when N is odd."""
    k = identity_indices(N)
    lim = N - (N % 2)
    k[0:lim:2], k[1:lim:2] = k[1:lim:2].copy(), k[0:lim:2].copy()
    return k


def vdc_family(bases: Sequence[int]) -> list[VdcSequence]:
    return [VdcSequence(BaseChain.geometric(int(b), 1)) for b in bases]


def vdc_family_primes(count: int) -> list[VdcSequence]:
    """Radical-inverse sequences over the first `count` primes (pairwise coprime)."""
    return vdc_family(first_primes(count))


@dataclass
class ExperimentReport:
    """Named statistics plus the trace that produced them.

    `passed` is a pure function of the statistics and the declared tolerance;
    reruns with the same parameters and seed reproduce the report bit for bit.
    """

    name: str
    parameters: dict
    statistics: dict
    trace: tuple
    passed: bool
    seed: int | None = None


def niven_ud_test(k, M: int, threshold: float = 0.05) -> ExperimentReport:
    """Worst residue-class frequency deviation from 1/m over all moduli m <= M."""
    k = np.asarray(k, dtype=np.int64)
    if M < 1:
        raise ValueError("M must be >= 1")
    if k.size < 100 * M:
        raise DiagnosticError(f"need at least {100 * M} indices for M={M}, got {k.size}")
    trace = []
    worst = 0.0
    for m in range(1, M + 1):
        freq = np.bincount(k % m, minlength=m) / k.size
        dev = float(np.abs(freq - 1.0 / m).max())
        trace.append((m, dev))
        worst = max(worst, dev)
    return ExperimentReport(
        name="niven-ud",
        parameters={"M": M, "N": int(k.size), "threshold": threshold},
        statistics={"max_deviation": worst},
        trace=tuple(trace),
        passed=worst <= threshold,
    )


def resample_invariance(
    v: SequenceWindow,
    k,
    eps: float = 0.01,
    delta: float = 0.05,
    ladder: Sequence[int] = FACTORIAL_LADDER,
    niven_M: int = 8,
    niven_threshold: float = 0.05,
) -> ExperimentReport:
    """|E_N(v(k)) - E_N(v)| after gating on weak congruence-continuity of v and
    uniform distribution of k in the integers.

    The pass tolerance 2 H delta + eps scales with the continuity budgets,
    H being the sup norm of the window.
    """
    k = np.asarray(k, dtype=np.int64)
    try:
        exceptional = weak_continuity_profile(v, eps, delta, ladder)
    except ContinuityBudgetError as e:
        raise GateError(f"window is not weakly continuous at the budget: {e}") from e
    gate = niven_ud_test(k, niven_M, threshold=niven_threshold)
    if not gate.passed:
        raise GateError(
            f"index sequence fails the uniform-distribution gate "
            f"(deviation {gate.statistics['max_deviation']:.4g} > {niven_threshold})"
        )
    vk = subsequence(v, k)
    stat = abs(float(vk.values.mean()) - float(v.values.mean()))
    H = sup_norm(v)
    tol = 2.0 * H * delta + eps
    return ExperimentReport(
        name="resample-invariance",
        parameters={
            "N": len(v),
            "M": niven_M,
            "eps": eps,
            "delta": delta,
            "exceptional_level": exceptional.modulus,
            "exceptional_density": float(exceptional.mu_upper),
        },
        statistics={"mean_shift": stat, "tolerance": tol},
        trace=(),
        passed=stat <= tol,
    )


def _pairwise_independence_gate(windows: list[SequenceWindow], threshold: float) -> None:
    for i in range(len(windows)):
        for j in range(i + 1, len(windows)):
            rep = interval_independence_stat(
                windows[i], windows[j], verdict_threshold=threshold
            )
            if not rep.passed:
                raise GateError(
                    f"members {i} and {j} fail the independence gate "
                    f"({rep.statistic:.4g} > {threshold})"
                )


def _moment_gate(windows: list[SequenceWindow], tol: float) -> tuple[float, float]:
    moms = [moments(w) for w in windows]
    means = [m.mean for m in moms]
    disps = [m.dispersion for m in moms]
    if max(means) - min(means) > tol:
        raise GateError(f"member means disagree by {max(means) - min(means):.4g}")
    if max(disps) - min(disps) > tol:
        raise GateError(f"member dispersions disagree by {max(disps) - min(disps):.4g}")
    return float(np.mean(means)), float(np.mean(disps))


def clt_experiment(
    family,
    N: int,
    tolerance: float = 0.05,
    moment_tol: float = 0.02,
    indep_threshold: float = 0.02,
) -> ExperimentReport:
    """Kolmogorov distance between the standardized member sum and the normal law.

    The family must share mean and dispersion within `moment_tol` and pass the
    pairwise interval independence gate.
    """
    windows = [h.window(N) for h in family]
    k = len(windows)
    _, d2 = _moment_gate(windows, moment_tol)
    _pairwise_independence_gate(windows, indep_threshold)
    total = np.sum([w.values for w in windows], axis=0)
    mean_e = float(total.mean()) / k  # pooled mean; centers the sum exactly
    std = math.sqrt(k * d2)
    z = (total - k * mean_e) / std
    trace = tuple(
        (n, kolmogorov_distance(z[:n], normal_cdf)) for n in (N // 4, N // 2, N) if n
    )
    stat = trace[-1][1]
    return ExperimentReport(
        name="clt-transfer",
        parameters={"k": k, "N": N, "tolerance": tolerance},
        statistics={
            "kolmogorov_distance": stat,
            "standardized_mean": float(z.mean()),
            "standardized_var": float(z.var()),
        },
        trace=trace,
        passed=stat <= tolerance,
    )


def weak_law_experiment(
    family,
    eps: float,
    k_grid: Sequence[int],
    N: int = 10_000,
    slack: float | None = None,
    moment_tol: float = 0.02,
    indep_threshold: float = 0.02,
) -> ExperimentReport:
    """Observed large-deviation frequency of k-member averages against the
    dispersion bound D^2 / (k eps^2), for each k in the grid."""
    if max(k_grid) > len(family):
        raise GateError(f"grid asks for {max(k_grid)} members, family has {len(family)}")
    windows = [h.window(N) for h in family]
    _moment_gate(windows, moment_tol)
    _pairwise_independence_gate(windows, indep_threshold)
    if slack is None:
        slack = 2.0 / N
    trace = []
    stats = {}
    ok = True
    for k in k_grid:
        members = windows[:k]
        e = float(np.mean([w.values.mean() for w in members]))
        d2 = float(np.mean([moments(w).dispersion for w in members]))
        avg = np.mean([w.values for w in members], axis=0)
        observed = float(np.mean(np.abs(avg - e) >= eps))
        bound = d2 / (k * eps**2)
        trace.append((k, observed, bound))
        stats[f"observed_k{k}"] = observed
        stats[f"bound_k{k}"] = bound
        ok = ok and observed <= bound + slack
    return ExperimentReport(
        name="weak-law",
        parameters={"eps": eps, "k_grid": tuple(k_grid), "N": N, "slack": slack},
        statistics=stats,
        trace=tuple(trace),
        passed=ok,
    )


def _family_bases(family) -> list[int]:
    bases = []
    for h in family:
        chain = getattr(h, "chain", None)
        if chain is None or len(chain.moduli) < 2:
            raise GateError("metric experiment needs radical-inverse handles")
        bases.append(chain.moduli[1])
    return bases


def metric_ud_experiment(
    family,
    n_alphas: int,
    seed: int,
    N_terms: int | None = None,
    h_max: int = 3,
    threshold: float = 0.25,
    pass_fraction: float = 0.95,
    eval_eps: float = 1e-3,
) -> ExperimentReport:
    """Exponential-sum flatness of the extended family at sampled points.

    For each sampled point alpha, the n-th term is the extension of the n-th
    family member evaluated at alpha; the statistic per alpha is the largest
    normalized exponential sum magnitude over frequencies 1..h_max (negative
    frequencies give conjugate sums of equal magnitude).
    """
    bases = _family_bases(family)
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            if gcd(bases[i], bases[j]) != 1:
                raise GateError(
                    f"bases {bases[i]} and {bases[j]} share a factor; family "
                    f"is not pairwise independent"
                )
    if N_terms is None:
        N_terms = len(family)
    if N_terms > len(family):
        raise GateError(f"asked for {N_terms} terms from {len(family)} members")
    depth = max(_digits_needed(b, eval_eps) for b in bases)
    product = 1
    for b in bases:
        product *= b
    levels = tuple(product**i for i in range(1, depth + 1))
    per_alpha = []
    for i in range(n_alphas):
        alpha = sample_omega(seed * 1_000_003 + i, levels)
        vals = np.array(
            [extend_eval(h, alpha, eval_eps) for h in family[:N_terms]], dtype=float
        )
        worst = max(
            float(np.abs(np.exp(2j * np.pi * h * vals).mean()))
            for h in range(1, h_max + 1)
        )
        per_alpha.append(worst)
    per_alpha_arr = np.array(per_alpha)
    frac_ok = float(np.mean(per_alpha_arr <= threshold))
    return ExperimentReport(
        name="metric-ud",
        parameters={
            "n_alphas": n_alphas,
            "N_terms": N_terms,
            "h_max": h_max,
            "threshold": threshold,
            "pass_fraction": pass_fraction,
            "eval_eps": eval_eps,
            "ladder_depth": depth,
        },
        statistics={
            "max_weyl_sum": float(per_alpha_arr.max()),
            "fraction_passing": frac_ok,
        },
        trace=tuple(per_alpha),
        passed=frac_ok >= pass_fraction,
        seed=seed,
    )


def _digits_needed(base: int, eps: float) -> int:
    d = 1
    cap = base
    while 1.0 / cap > eps:
        cap *= base
        d += 1
    return d


def composed_independence_check(
    family,
    g_family: Sequence[Sequence[Callable]],
    k,
    niven_M: int = 8,
    niven_threshold: float = 0.05,
    indep_threshold: float = 0.02,
    tolerance: float = 0.02,
) -> ExperimentReport:
    """Product-mean factorization of composed, resampled family members.

    For each tuple (g_1, ..., g_r) the deviation is
    |E_N(prod g_j(v_j(k))) - prod E_N(g_j(v_j(k)))|; the statistic is the max.
    """
    k = np.asarray(k, dtype=np.int64)
    gate = niven_ud_test(k, niven_M, threshold=niven_threshold)
    if not gate.passed:
        raise GateError(
            f"index sequence fails the uniform-distribution gate "
            f"(deviation {gate.statistics['max_deviation']:.4g})"
        )
    N = int(k.max())
    windows = [h.window(N) for h in family]
    _pairwise_independence_gate(windows, indep_threshold)
    resampled = [subsequence(w, k) for w in windows]
    trace = []
    worst = 0.0
    for t, gs in enumerate(g_family):
        if len(gs) != len(family):
            raise ValueError(f"tuple {t} has {len(gs)} functions for {len(family)} members")
        arrays = [
            np.asarray(g(s.values), dtype=float) for g, s in zip(gs, resampled)
        ]
        prod = arrays[0].copy()
        for a in arrays[1:]:
            prod *= a
        dev = abs(
            float(prod.mean()) - math.prod(float(a.mean()) for a in arrays)
        )
        trace.append((t, dev))
        worst = max(worst, dev)
    return ExperimentReport(
        name="composed-independence",
        parameters={
            "tuples": len(list(g_family)),
            "members": len(family),
            "N_indices": int(k.size),
            "tolerance": tolerance,
        },
        statistics={"max_deviation": worst},
        trace=tuple(trace),
        passed=worst <= tolerance,
    )
