"""Run summaries and the two-sample Wilcoxon rank-sum test."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["RunSummary", "summarize", "midranks", "wilcoxon_ranksum", "EXACT_MAX_TOTAL"]

EXACT_MAX_TOTAL = 12


@dataclass(frozen=True)
class RunSummary:
    ab: float
    mb: float
    sd: float
    n_runs: int


def summarize(final_bests) -> RunSummary:
    """Mean, median and sample standard deviation (n - 1) of final values."""
    x = np.asarray(final_bests, dtype=np.float64).ravel()
    if x.size == 0:
        raise ValueError("summarize needs at least one value")
    sd = float(np.std(x, ddof=1)) if x.size > 1 else 0.0
    return RunSummary(float(np.mean(x)), float(np.median(x)), sd, int(x.size))


def midranks(values) -> np.ndarray:
    """1-based ranks; tied values share the average of their positions."""
    v = np.asarray(values, dtype=np.float64)
    order = np.argsort(v, kind="mergesort")
    sv = v[order]
    ranks = np.empty(v.size, dtype=np.float64)
    start = 0
    for end in range(1, v.size + 1):
        if end == v.size or sv[end] != sv[start]:
            ranks[order[start:end]] = (start + end + 1) / 2.0
            start = end
    return ranks


def _exact_pvalue(doubled_ranks, n_a, observed):
    """Two-sided permutation p-value of the rank sum by subset-sum counting.

    ``doubled_ranks`` are 2x midranks (integers); ``observed`` is 2x the
    observed rank sum of the first sample.
    """
    total = sum(doubled_ranks)
    # counts[k][s]: number of k-subsets with doubled rank sum s
    counts = [dict() for _ in range(n_a + 1)]
    counts[0][0] = 1
    for r in doubled_ranks:
        for k in range(n_a, 0, -1):
            prev = counts[k - 1]
            cur = counts[k]
            for s, c in prev.items():
                cur[s + r] = cur.get(s + r, 0) + c
    dist = counts[n_a]
    # compare 2*N*|W - mu| in integers, mu = n_a * total / N
    n = len(doubled_ranks)
    dev_obs = abs(n * observed - n_a * total)
    extreme = sum(c for s, c in dist.items() if abs(n * s - n_a * total) >= dev_obs)
    return extreme / math.comb(n, n_a)


def wilcoxon_ranksum(a, b, method: str = "auto") -> float:
    """Two-sided p-value of the Wilcoxon rank-sum test.

    ``method``: ``"exact"`` enumerates the permutation distribution of the
    rank sum (midranks, valid with ties); ``"normal"`` uses the normal
    approximation with tie-corrected variance and continuity correction;
    ``"auto"`` picks exact when the pooled size is at most 12 and there are
    no ties.
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.size < 3 or b.size < 3:
        raise ValueError(f"each sample needs at least 3 values, got {a.size} and {b.size}")
    pooled = np.concatenate([a, b])
    ranks = midranks(pooled)
    n_a, n_b, n = a.size, b.size, pooled.size
    w = float(ranks[:n_a].sum())
    ties = np.unique(pooled).size < n

    if method == "auto":
        method = "exact" if n <= EXACT_MAX_TOTAL and not ties else "normal"
    if method == "exact":
        doubled = [int(round(2 * r)) for r in ranks]
        return _exact_pvalue(doubled, n_a, int(round(2 * w)))
    if method != "normal":
        raise ValueError(f"unknown method {method!r}")

    mu = n_a * (n + 1) / 2.0
    _, t = np.unique(pooled, return_counts=True)
    tie_term = float(np.sum(t**3 - t)) / (n * (n - 1))
    var = n_a * n_b / 12.0 * ((n + 1) - tie_term)
    if var <= 0:
        return 1.0
    z = max(abs(w - mu) - 0.5, 0.0) / math.sqrt(var)
    p = math.erfc(z / math.sqrt(2.0))
    return min(1.0, max(p, np.nextafter(0.0, 1.0)))
