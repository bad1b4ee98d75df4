"""Pure-Python/numpy implementations of the kernel entry points.

Signatures match ``sigkit._kernels``.  Raw random words are consumed in the
same order as the compiled loops, so both backends see the same ranks and
the same exponential variates.
"""

from __future__ import annotations

import bisect

import numpy as np

from .agreement import ia_flat, kappa_flat
from .compositions import next_composition, unrank_lex_fast

available = True

_FLAT = {"kappa": kappa_flat, "ia": ia_flat}
_INV_2_53 = 2.0 ** -53


def _flat_measure(name):
    try:
        return _FLAT[name]
    except KeyError:
        raise ValueError(f"no built-in kernel for measure {name!r}") from None


def unrank_fast(m, k, i, block0=None):
    return unrank_lex_fast(m, k, i).parts


def exact_counts(measure, n, m, start, count, block0, thresholds):
    f = _flat_measure(measure)
    thr = [float(t) for t in thresholds]
    hist = [0] * (len(thr) + 1)
    if count == 0:
        return np.zeros(len(thr), dtype=np.int64)
    k = n * n
    x = list(unrank_lex_fast(m, k, start).parts)
    right = bisect.bisect_right
    for step in range(count):
        hist[right(thr, f([v / m for v in x], n))] += 1
        if step + 1 < count:
            next_composition(x)
    return np.cumsum(np.asarray(hist[:-1], dtype=np.int64))


def draw_ranks(bit_generator, total, count):
    """``count`` uniform ranks below ``total`` (< 2**64) by masked rejection."""
    bits = (total - 1).bit_length()
    if bits == 0:
        return [0] * count
    mask = np.uint64((1 << bits) - 1)
    limit = np.uint64(total)
    out = []
    while len(out) < count:
        need = count - len(out)
        # acceptance is at least one half
        raw = bit_generator.random_raw(need if need < 64 else need + need // 2 + 16)
        r = raw & mask
        out.extend(r[r < limit][:need].tolist())
    return out


def confusion_values(measure, n, m, total, block0, count, bit_generator):
    f = _flat_measure(measure)
    k = n * n
    ranks = draw_ranks(bit_generator, total, count)
    out = np.empty(count)
    for s, r in enumerate(ranks):
        x = unrank_lex_fast(m, k, r).parts
        out[s] = f([v / m for v in x], n)
    return out


def kappa_batch(p):
    """Cohen's kappa for a stack of probability matrices, shape ``(N, n, n)``."""
    rows = p.sum(axis=2)
    cols = p.sum(axis=1)
    po = np.trace(p, axis1=1, axis2=2)
    pe = (rows * cols).sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        k = (po - pe) / (1.0 - pe)
    return np.where(pe >= 1.0, 1.0, k)


def _entropy(q):
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(q > 0.0, q * np.log(q), 0.0)
    return -t.sum(axis=1)


def ia_batch(p):
    rows = p.sum(axis=2)
    cols = p.sum(axis=1)
    denom = rows[:, :, None] * cols[:, None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, p * np.log(p / denom), 0.0)
        info = terms.sum(axis=(1, 2))
        h = np.minimum(_entropy(rows), _entropy(cols))
        v = info / h
    return np.where(h > 0.0, np.clip(v, 0.0, 1.0), 0.0)


_BATCH = {"kappa": kappa_batch, "ia": ia_batch}


def simplex_rows(bit_generator, count, k):
    raw = bit_generator.random_raw(count * k)
    u = ((raw >> np.uint64(11)) + np.uint64(1)) * _INV_2_53
    e = -np.log(u).reshape(count, k)
    return e / e.sum(axis=1, keepdims=True)


def simplex_points(k, count, bit_generator):
    return simplex_rows(bit_generator, count, k)


def probability_values(measure, n, count, bit_generator, chunk=1 << 16):
    _flat_measure(measure)
    batch = _BATCH[measure]
    out = np.empty(count)
    k = n * n
    for lo in range(0, count, chunk):
        hi = min(count, lo + chunk)
        out[lo:hi] = batch(simplex_rows(bit_generator, hi - lo, k).reshape(-1, n, n))
    return out
