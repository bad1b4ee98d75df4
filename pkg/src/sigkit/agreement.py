"""Confusion and probability matrices, and the agreement measures over them.

Measures are always evaluated on probability matrices; a confusion matrix is
first pushed through :func:`to_probability`.  The scalar formulas below are
written as explicit left-to-right loops so that the compiled kernels, which
mirror them statement by statement, produce bit-identical values.  That
matters for the strict ``sigma < c`` comparisons: a threshold taken from an
observed matrix must tie exactly with the kernel's value for that matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from .errors import UnknownMeasure, ZeroTests

PROBABILITY_TOLERANCE = 1e-9


def _square_rows(rows, kind):
    rows = tuple(tuple(r) for r in rows)
    n = len(rows)
    if n < 1:
        raise ValueError(f"{kind} must have at least one row")
    for r in rows:
        if len(r) != n:
            raise ValueError(f"{kind} must be square, got a row of length {len(r)} with {n} rows")
    return rows


@dataclass(frozen=True)
class ConfusionMatrix:
    """An n x n matrix of natural counts; ``entries[i][j]`` counts items put in
    class i by the first classifier and class j by the second."""

    entries: tuple

    def __post_init__(self):
        rows = _square_rows(self.entries, "confusion matrix")
        checked = []
        for r in rows:
            out = []
            for v in r:
                if isinstance(v, bool) or int(v) != v:
                    raise ValueError(f"confusion entries must be integers, got {v!r}")
                if v < 0:
                    raise ValueError(f"confusion entries must be nonnegative, got {v!r}")
                out.append(int(v))
            checked.append(tuple(out))
        object.__setattr__(self, "entries", tuple(checked))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def m(self) -> int:
        return sum(sum(r) for r in self.entries)

    @property
    def flat(self) -> tuple:
        return tuple(v for r in self.entries for v in r)

    def scaled(self, s: int) -> "ConfusionMatrix":
        return ConfusionMatrix([[s * v for v in r] for r in self.entries])


@dataclass(frozen=True)
class ProbabilityMatrix:
    """An n x n joint distribution.

    User-supplied entries must sum to one within ``1e-9``; they are then divided
    by their sum.  :func:`to_probability` bypasses the renormalization so that
    ``M / m`` is stored exactly as computed.
    """

    entries: tuple
    _flat: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = _square_rows(self.entries, "probability matrix")
        flat = []
        for r in rows:
            for v in r:
                v = float(v)
                if not v >= 0.0:
                    raise ValueError(f"probability entries must be nonnegative, got {v!r}")
                flat.append(v)
        total = 0.0
        for v in flat:
            total += v
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise ValueError(f"probability entries must sum to 1, got {total!r}")
        if total != 1.0:
            flat = [v / total for v in flat]
        self._store(len(rows), flat)

    def _store(self, n, flat):
        flat = tuple(flat)
        object.__setattr__(self, "_flat", flat)
        object.__setattr__(self, "entries", tuple(flat[i * n:(i + 1) * n] for i in range(n)))

    @classmethod
    def _exact(cls, n: int, flat: Sequence[float]) -> "ProbabilityMatrix":
        self = object.__new__(cls)
        self._store(n, flat)
        return self

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def flat(self) -> tuple:
        return self._flat


def to_probability(M: ConfusionMatrix) -> ProbabilityMatrix:
    """Divide every count by the number of tests."""
    m = M.m
    if m == 0:
        raise ZeroTests("a confusion matrix with zero tests has no probability matrix")
    return ProbabilityMatrix._exact(M.n, [v / m for v in M.flat])


def _marginals(p, n):
    rows = []
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += p[i * n + j]
        rows.append(acc)
    cols = []
    for j in range(n):
        acc = 0.0
        for i in range(n):
            acc += p[i * n + j]
        cols.append(acc)
    return rows, cols


def kappa_flat(p: Sequence[float], n: int) -> float:
    """Cohen's kappa of a row-major flattened probability matrix."""
    rows, cols = _marginals(p, n)
    po = 0.0
    for i in range(n):
        po += p[i * n + i]
    pe = 0.0
    for i in range(n):
        pe += rows[i] * cols[i]
    if pe >= 1.0:
        # both marginals sit on the same single class
        return 1.0
    return (po - pe) / (1.0 - pe)


def ia_flat(p: Sequence[float], n: int) -> float:
    """Mutual information over the smaller marginal entropy, clamped to [0, 1]."""
    rows, cols = _marginals(p, n)
    info = 0.0
    for i in range(n):
        for j in range(n):
            x = p[i * n + j]
            if x > 0.0:
                info += x * math.log(x / (rows[i] * cols[j]))
    hx = 0.0
    for r in rows:
        if r > 0.0:
            hx -= r * math.log(r)
    hy = 0.0
    for c in cols:
        if c > 0.0:
            hy -= c * math.log(c)
    h = hx if hx < hy else hy
    if h <= 0.0:
        return 0.0
    v = info / h
    if v < 0.0:
        return 0.0
    if v > 1.0:
        return 1.0
    return v


def cohen_kappa(P: ProbabilityMatrix) -> float:
    return kappa_flat(P.flat, P.n)


def information_agreement(P: ProbabilityMatrix) -> float:
    return ia_flat(P.flat, P.n)


Matrix = Union[ConfusionMatrix, ProbabilityMatrix]


@dataclass(frozen=True)
class AgreementMeasure:
    """A named agreement measure with its declared output interval.

    ``kernel`` names the compiled implementation of a built-in measure; custom
    measures leave it ``None`` and fall back to calling ``evaluate`` per matrix.
    """

    name: str
    range_min: float
    range_max: float
    evaluate: Callable[[ProbabilityMatrix], float] = field(compare=False)
    kernel: Optional[str] = None

    def __call__(self, M: Matrix) -> float:
        if isinstance(M, ConfusionMatrix):
            M = to_probability(M)
        return self.evaluate(M)


KAPPA = AgreementMeasure("kappa", -1.0, 1.0, cohen_kappa, kernel="kappa")
IA = AgreementMeasure("ia", 0.0, 1.0, information_agreement, kernel="ia")

_REGISTRY = {m.name: m for m in (KAPPA, IA)}


def lookup_measure(name: str) -> AgreementMeasure:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownMeasure(
            f"UnknownMeasure: {name!r} (available: {', '.join(sorted(_REGISTRY))})"
        ) from None


def flat_evaluator(measure: AgreementMeasure) -> Callable[[Sequence[float], int], float]:
    """Return ``f(flat, n)`` evaluating ``measure`` on a flattened probability matrix."""
    if measure.kernel == "kappa":
        return kappa_flat
    if measure.kernel == "ia":
        return ia_flat

    def evaluate(flat, n):
        return measure.evaluate(ProbabilityMatrix._exact(n, flat))

    return evaluate
