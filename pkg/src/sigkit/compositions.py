"""Weak compositions of m into k parts: counting, lexicographic unranking, enumeration.

Ranks and cardinalities are plain Python ints, so nothing ever overflows;
``composition_count(10**6, 25)`` has well over a hundred digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import NotASquare, RankOutOfRange, TooShort


@dataclass(frozen=True, order=True)
class WeakComposition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(v) for v in self.parts)
        if not parts:
            raise ValueError("a weak composition needs at least one part")
        if any(v < 0 for v in parts):
            raise ValueError(f"parts must be nonnegative, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def m(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]


def composition_count(m: int, k: int) -> int:
    """Number of weak compositions of ``m`` into ``k`` parts, ``C(m+k-1, m)``."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    return math.comb(m + k - 1, m)


def matrix_size(length: int) -> int:
    n = math.isqrt(length)
    if length < 1 or n * n != length:
        raise NotASquare(f"length {length} is not a positive perfect square")
    return n


def gamma(x: Sequence) -> list:
    """Row-major fill of a length n*n vector into an n x n matrix."""
    x = list(x)
    n = matrix_size(len(x))
    return [x[i * n:(i + 1) * n] for i in range(n)]


def gamma_inv(M: Sequence[Sequence]) -> tuple:
    return tuple(v for row in M for v in row)


def project(x: Sequence[float]) -> tuple:
    """Drop the last coordinate (a bijection on the simplex)."""
    x = tuple(x)
    if len(x) < 2:
        raise TooShort(f"projection needs at least 2 coordinates, got {len(x)}")
    return x[:-1]


def _check_rank(m, k, i):
    total = composition_count(m, k)
    if not 0 <= i < total:
        raise RankOutOfRange(f"rank {i} outside [0, {total}) for m={m}, k={k}")
    return total


def unrank_lex(m: int, k: int, i: int) -> WeakComposition:
    """The ``i``-th weak composition of ``m`` into ``k`` parts in lexicographic order.

    Each leading part is found by skipping whole blocks of compositions that
    share a smaller leading part; block sizes are recomputed as binomials.
    """
    _check_rank(m, k, i)
    parts = []
    while k > 1:
        first = 0
        while m > 0:
            block = math.comb(m + k - 2, m)
            if i < block:
                break
            i -= block
            m -= 1
            first += 1
        parts.append(first)
        k -= 1
    parts.append(m)
    return WeakComposition(tuple(parts))


def unrank_lex_fast(m: int, k: int, i: int) -> WeakComposition:
    """Same contract as :func:`unrank_lex` in O(m + k) big-integer operations.

    One binomial is computed up front; every later block size follows from the
    previous one by an exact ratio, multiplied first and then divided.
    """
    _check_rank(m, k, i)
    parts = [0] * k
    if k == 1:
        parts[0] = m
        return WeakComposition(tuple(parts))
    pos = 0
    block = math.comb(m + k - 2, m)  # compositions of m into k-1 parts
    while m > 0 and k > 1:
        start = m
        while i >= block:
            i -= block
            num = block * m
            den = m + k - 2
            assert num % den == 0
            block = num // den
            m -= 1
        parts[pos] = start - m
        pos += 1
        k -= 1
        if k > 1:
            num = block * (k - 1)
            den = m + k - 1
            assert num % den == 0
            block = num // den
    parts[-1] = m
    return WeakComposition(tuple(parts))


def next_composition(parts: list) -> bool:
    """Advance ``parts`` in place to its lexicographic successor.

    Returns False (leaving ``parts`` untouched) when it is already the last one.
    """
    k = len(parts)
    if k < 2:
        return False
    if parts[-1] > 0:
        parts[-2] += 1
        parts[-1] -= 1
        return True
    p = k - 2
    while p >= 0 and parts[p] == 0:
        p -= 1
    if p <= 0:
        return False
    parts[p - 1] += 1
    parts[-1] = parts[p] - 1
    parts[p] = 0
    return True


def enumerate_all(m: int, k: int, start: int = 0) -> Iterator[WeakComposition]:
    """Yield every weak composition of ``m`` into ``k`` parts in lexicographic
    order, beginning at rank ``start``."""
    composition_count(m, k)
    if start == 0:
        parts = [0] * k
        parts[-1] = m
    else:
        parts = list(unrank_lex_fast(m, k, start).parts)
    while True:
        yield WeakComposition(tuple(parts))
        if not next_composition(parts):
            return
