"""Exact significativity over confusion matrices by exhaustive enumeration."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import backend
from .agreement import AgreementMeasure, flat_evaluator
from .compositions import composition_count, enumerate_all
from .errors import BudgetExceeded, ZeroTests
from .rng import split_count

DEFAULT_BUDGET = 10**8

_KERNEL_LIMIT = 1 << 63


@dataclass(frozen=True)
class ExactSignificativity:
    """Fraction of the ``denominator`` confusion matrices scoring strictly below ``c``."""

    numerator: int
    denominator: int

    @property
    def value(self) -> float:
        return self.numerator / self.denominator


def _generic_counts(sigma, n, m, start, count, thresholds):
    f = flat_evaluator(sigma)
    hist = np.zeros(len(thresholds) + 1, dtype=np.int64)
    it = enumerate_all(m, n * n, start)
    for _ in range(count):
        x = next(it)
        hist[np.searchsorted(thresholds, f([v / m for v in x], n), side="right")] += 1
    return np.cumsum(hist[:-1])


def count_below(
    sigma: AgreementMeasure,
    n: int,
    m: int,
    thresholds: Sequence[float],
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> tuple:
    """Exact ``(counts, total)`` where ``counts[t]`` is the number of n x n
    confusion matrices with ``m`` tests whose measure value is ``< thresholds[t]``.

    One enumeration serves every threshold.  With ``workers > 1`` the rank
    range is split into contiguous chunks; the result does not depend on the split.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if m < 1:
        raise ZeroTests("exact significativity needs at least one test (m >= 1)")
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    k = n * n
    total = composition_count(m, k)
    if total > budget:
        raise BudgetExceeded(total, budget)

    thr = np.asarray(thresholds, dtype=float)
    order = np.argsort(thr, kind="stable")
    sorted_thr = np.ascontiguousarray(thr[order])

    kernels = backend.current()
    use_kernel = sigma.kernel is not None and total < _KERNEL_LIMIT and m < (1 << 32)
    block0 = math.comb(m + k - 2, m) if k > 1 else 0

    def run(chunk):
        start, count = chunk
        if use_kernel:
            return kernels.exact_counts(sigma.kernel, n, m, start, count, block0, sorted_thr)
        return _generic_counts(sigma, n, m, start, count, sorted_thr)

    chunks = []
    start = 0
    for count in split_count(total, min(workers, total)):
        chunks.append((start, count))
        start += count
    if len(chunks) == 1:
        parts = [run(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(run, chunks))
    counts_sorted = np.sum(parts, axis=0)
    counts = np.empty(len(thr), dtype=np.int64)
    counts[order] = counts_sorted
    return [int(v) for v in counts], total


def exact_varrho(
    sigma: AgreementMeasure,
    n: int,
    m: int,
    c: float,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> ExactSignificativity:
    """Fraction of n x n confusion matrices with ``m`` tests whose measure value is
    strictly below ``c``; ties are not counted."""
    (num,), total = count_below(sigma, n, m, [c], budget=budget, workers=workers)
    return ExactSignificativity(num, total)


def exact_curve(sigma, n, m, cs, budget=DEFAULT_BUDGET, workers=1):
    counts, total = count_below(sigma, n, m, cs, budget=budget, workers=workers)
    return [ExactSignificativity(v, total) for v in counts]
