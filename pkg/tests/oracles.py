"""Independent brute-force references; nothing here uses sigkit's enumeration."""

import itertools
import math
from fractions import Fraction


def brute_compositions(m, k):
    """All weak compositions by filtering the full grid, sorted lexicographically."""
    return sorted(c for c in itertools.product(range(m + 1), repeat=k) if sum(c) == m)


def kappa_rational(x, n):
    m = sum(x)
    p = [Fraction(v, m) for v in x]
    po = sum(p[i * n + i] for i in range(n))
    rows = [sum(p[i * n:(i + 1) * n]) for i in range(n)]
    cols = [sum(p[j::n]) for j in range(n)]
    pe = sum(r * c for r, c in zip(rows, cols))
    if pe == 1:
        return Fraction(1)
    return (po - pe) / (1 - pe)


def mutual_information_ratio(p, n):
    """IA by a differently arranged computation: I = H(X) + H(Y) - H(X, Y)."""

    def h(q):
        return -math.fsum(v * math.log(v) for v in q if v > 0)

    rows = [math.fsum(p[i * n:(i + 1) * n]) for i in range(n)]
    cols = [math.fsum(p[j::n]) for j in range(n)]
    hx, hy = h(rows), h(cols)
    if min(hx, hy) <= 0:
        return 0.0
    return (hx + hy - h(p)) / min(hx, hy)
