"""Seeded Monte Carlo estimators of significativity.

Two estimators share one shape: draw ``N`` points, evaluate the measure on
each, and report the fraction strictly below the threshold.

* discrete: uniform weak compositions (uniform rank, then lexicographic
  unranking), estimating the confusion-matrix index for a fixed ``m``;
* continuous: uniform points of the probability simplex (normalized
  exponential variates), estimating the probability-matrix index.

``N`` is split over ``workers`` streams, worker ``w`` drawing from
``RngStream(seed, w)``.  Results are reproducible for fixed ``(seed, workers)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import backend
from .agreement import AgreementMeasure, flat_evaluator
from .compositions import WeakComposition, composition_count, unrank_lex_fast
from .errors import ZeroTests
from .rng import RngStream, split_count

MC_CONFUSION = "mc_confusion"
MC_PROBABILITY = "mc_probability"
MAX_DEFAULT_SAMPLES = 10**6

_U64 = 1 << 64


@dataclass(frozen=True)
class SignificativityEstimate:
    value: float
    n_samples: int
    std_error: float
    method: str
    seed: int

    @classmethod
    def from_count(cls, below: int, n_samples: int, method: str, seed: int):
        p = below / n_samples
        return cls(p, n_samples, math.sqrt(p * (1.0 - p) / n_samples), method, seed)


@dataclass(frozen=True)
class SimplexPoint:
    coords: tuple

    def __post_init__(self):
        coords = tuple(float(v) for v in self.coords)
        if not coords or any(v < 0.0 for v in coords):
            raise ValueError("simplex coordinates must be nonnegative")
        if abs(math.fsum(coords) - 1.0) > 1e-12:
            raise ValueError(f"simplex coordinates must sum to 1, got {math.fsum(coords)!r}")
        object.__setattr__(self, "coords", coords)


def default_samples(m: int, k: int) -> int:
    """``ceil(sqrt(|C_{m,k}|))`` capped at one million."""
    total = composition_count(m, k)
    return min(MAX_DEFAULT_SAMPLES, math.isqrt(total - 1) + 1)


def sample_uniform_composition(m: int, k: int, rng: RngStream) -> WeakComposition:
    return unrank_lex_fast(m, k, rng.below(composition_count(m, k)))


def sample_simplex(k: int, rng: RngStream) -> SimplexPoint:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    row = backend.current().simplex_points(k, 1, rng.bit_generator)[0]
    return SimplexPoint(tuple(row.tolist()))


def simplex_points(k: int, N: int, seed: int = 0, workers: int = 1) -> np.ndarray:
    """``N`` uniform points of the (k - 1)-simplex as an ``(N, k)`` array."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    kernels = backend.current()
    return _run_workers(lambda rng, count: kernels.simplex_points(k, count, rng.bit_generator), N, seed, workers)


def _run_workers(fn, N, seed, workers):
    if N < 1:
        raise ValueError(f"sample count must be positive, got {N}")
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    jobs = [(RngStream(seed, w), c) for w, c in enumerate(split_count(N, workers)) if c]
    if len(jobs) == 1:
        parts = [fn(*jobs[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
            parts = list(pool.map(lambda job: fn(*job), jobs))
    return np.concatenate(parts)


def confusion_values(
    sigma: AgreementMeasure, n: int, m: int, N: int, seed: int = 0, workers: int = 1
) -> np.ndarray:
    """Measure values of ``N`` uniformly drawn n x n confusion matrices with ``m`` tests."""
    if m < 1:
        raise ZeroTests("Monte Carlo significativity needs at least one test (m >= 1)")
    k = n * n
    total = composition_count(m, k)
    use_kernel = sigma.kernel is not None and total < _U64 and m < (1 << 32) and k > 1
    kernels = backend.current()
    block0 = math.comb(m + k - 2, m) if k > 1 else 0
    f = flat_evaluator(sigma)

    def draw(rng, count):
        if use_kernel:
            return kernels.confusion_values(
                sigma.kernel, n, m, total, block0, count, rng.bit_generator
            )
        out = np.empty(count)
        for s in range(count):
            x = unrank_lex_fast(m, k, rng.below(total))
            out[s] = f([v / m for v in x], n)
        return out

    return _run_workers(draw, N, seed, workers)


def probability_values(
    sigma: AgreementMeasure, n: int, N: int, seed: int = 0, workers: int = 1
) -> np.ndarray:
    """Measure values of ``N`` uniform n x n probability matrices."""
    k = n * n
    kernels = backend.current()
    f = flat_evaluator(sigma)

    def draw(rng, count):
        if sigma.kernel is not None:
            return kernels.probability_values(sigma.kernel, n, count, rng.bit_generator)
        out = np.empty(count)
        for s in range(count):
            out[s] = f(sample_simplex(k, rng).coords, n)
        return out

    return _run_workers(draw, N, seed, workers)


def fraction_below(values: np.ndarray, thresholds: Sequence[float]) -> list:
    """Counts of ``values < c`` for each threshold, from one sorted copy."""
    ordered = np.sort(values)
    return [int(v) for v in np.searchsorted(ordered, np.asarray(thresholds, float), side="left")]


def mc_varrho(
    sigma: AgreementMeasure,
    n: int,
    m: int,
    c: float,
    N: Optional[int] = None,
    seed: int = 0,
    workers: int = 1,
) -> SignificativityEstimate:
    """Monte Carlo estimate of the fraction of confusion matrices scoring below ``c``."""
    if m < 1:
        raise ZeroTests("Monte Carlo significativity needs at least one test (m >= 1)")
    if N is None:
        N = default_samples(m, n * n)
    values = confusion_values(sigma, n, m, N, seed=seed, workers=workers)
    return SignificativityEstimate.from_count(int(np.count_nonzero(values < c)), N, MC_CONFUSION, seed)


def mc_rho(
    sigma: AgreementMeasure,
    n: int,
    c: float,
    N: Optional[int] = None,
    seed: int = 0,
    workers: int = 1,
) -> SignificativityEstimate:
    """Monte Carlo estimate of the volume fraction of probability matrices scoring below ``c``."""
    if N is None:
        N = MAX_DEFAULT_SAMPLES
    values = probability_values(sigma, n, N, seed=seed, workers=workers)
    return SignificativityEstimate.from_count(int(np.count_nonzero(values < c)), N, MC_PROBABILITY, seed)


def mc_curve(values: np.ndarray, cs: Sequence[float], method: str, seed: int):
    """Estimates at every threshold from one shared sample of measure values."""
    N = len(values)
    return [SignificativityEstimate.from_count(b, N, method, seed) for b in fraction_below(values, cs)]
