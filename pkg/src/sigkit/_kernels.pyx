# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops: exhaustive counting, composition sampling, simplex sampling.

The measure formulas here mirror ``sigkit.agreement.kappa_flat`` and
``ia_flat`` operation for operation; keep them in sync.  Unranking needs
``total < 2**64`` and ``m < 2**32`` so every intermediate fits an unsigned
128-bit product.
"""

from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport log
from libc.stdint cimport int64_t, uint64_t

import numpy as np
cimport numpy as cnp
from numpy.random cimport bitgen_t

cnp.import_array()

cdef extern from *:
    """
    typedef unsigned __int128 sk_u128;
    """
    ctypedef unsigned long long sk_u128

cdef enum:
    KAPPA = 0
    IA = 1

cdef double INV_2_53 = 1.0 / 9007199254740992.0

available = True


cdef inline void marginals(const double *p, int n, double *rows, double *cols) noexcept nogil:
    cdef int i, j
    cdef double acc
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += p[i * n + j]
        rows[i] = acc
    for j in range(n):
        acc = 0.0
        for i in range(n):
            acc += p[i * n + j]
        cols[j] = acc


cdef double kappa_c(const double *p, int n, double *rows, double *cols) noexcept nogil:
    cdef int i
    cdef double po = 0.0, pe = 0.0
    marginals(p, n, rows, cols)
    for i in range(n):
        po += p[i * n + i]
    for i in range(n):
        pe += rows[i] * cols[i]
    if pe >= 1.0:
        return 1.0
    return (po - pe) / (1.0 - pe)


cdef double ia_c(const double *p, int n, double *rows, double *cols) noexcept nogil:
    cdef int i, j
    cdef double x, info = 0.0, hx = 0.0, hy = 0.0, h, v
    marginals(p, n, rows, cols)
    for i in range(n):
        for j in range(n):
            x = p[i * n + j]
            if x > 0.0:
                info += x * log(x / (rows[i] * cols[j]))
    for i in range(n):
        if rows[i] > 0.0:
            hx -= rows[i] * log(rows[i])
    for j in range(n):
        if cols[j] > 0.0:
            hy -= cols[j] * log(cols[j])
    h = hx if hx < hy else hy
    if h <= 0.0:
        return 0.0
    v = info / h
    if v < 0.0:
        return 0.0
    if v > 1.0:
        return 1.0
    return v


cdef inline double sigma(int code, const double *p, int n, double *rows, double *cols) noexcept nogil:
    if code == KAPPA:
        return kappa_c(p, n, rows, cols)
    return ia_c(p, n, rows, cols)


cdef int measure_code(str name) except -1:
    if name == "kappa":
        return KAPPA
    if name == "ia":
        return IA
    raise ValueError(f"no compiled kernel for measure {name!r}")


cdef void unrank(uint64_t m, int k, uint64_t i, uint64_t block0, int64_t *out) noexcept nogil:
    # block0 must equal comb(m + k - 2, m) for k >= 2
    cdef sk_u128 block = block0
    cdef uint64_t start
    cdef int pos = 0, j
    for j in range(k):
        out[j] = 0
    if k == 1:
        out[0] = <int64_t>m
        return
    while m > 0 and k > 1:
        start = m
        while i >= <uint64_t>block:
            i -= <uint64_t>block
            block = block * m / (m + k - 2)
            m -= 1
        out[pos] = <int64_t>(start - m)
        pos += 1
        k -= 1
        if k > 1:
            block = block * <uint64_t>(k - 1) / (m + k - 1)
    out[pos + k - 1] = <int64_t>m


cdef inline void advance(int64_t *x, int k) noexcept nogil:
    cdef int p
    if x[k - 1] > 0:
        x[k - 2] += 1
        x[k - 1] -= 1
        return
    p = k - 2
    while p >= 0 and x[p] == 0:
        p -= 1
    if p <= 0:
        return
    x[p - 1] += 1
    x[k - 1] = x[p] - 1
    x[p] = 0


cdef inline Py_ssize_t bisect_right(const double *a, Py_ssize_t size, double v) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = size, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if v < a[mid]:
            hi = mid
        else:
            lo = mid + 1
    return lo


cdef bitgen_t *get_bitgen(object bit_generator) except NULL:
    return <bitgen_t *> PyCapsule_GetPointer(bit_generator.capsule, "BitGenerator")


def unrank_fast(uint64_t m, int k, uint64_t i, uint64_t block0):
    """Unrank one composition; ``block0`` is ``comb(m + k - 2, m)``."""
    cdef int64_t[::1] out = np.zeros(k, dtype=np.int64)
    unrank(m, k, i, block0, &out[0])
    return tuple(np.asarray(out).tolist())


def exact_counts(str measure, int n, uint64_t m, uint64_t start, uint64_t count,
                 uint64_t block0, double[::1] thresholds):
    """Count, for each sorted threshold, the compositions of ranks
    ``[start, start + count)`` whose measure value is strictly below it."""
    cdef int code = measure_code(measure)
    cdef int k = n * n, j
    cdef Py_ssize_t t = thresholds.shape[0], idx
    cdef uint64_t step
    cdef double md = <double>m
    cdef int64_t[::1] x = np.zeros(k, dtype=np.int64)
    cdef double[::1] p = np.zeros(k)
    cdef double[::1] rows = np.zeros(n)
    cdef double[::1] cols = np.zeros(n)
    cdef int64_t[::1] hist = np.zeros(t + 1, dtype=np.int64)
    cdef double dummy = 0.0
    cdef const double *thr = &thresholds[0] if t > 0 else &dummy
    if count == 0:
        return np.zeros(t, dtype=np.int64)
    with nogil:
        unrank(m, k, start, block0, &x[0])
        for step in range(count):
            for j in range(k):
                p[j] = <double>x[j] / md
            idx = bisect_right(thr, t, sigma(code, &p[0], n, &rows[0], &cols[0]))
            hist[idx] += 1
            if step + 1 < count:
                advance(&x[0], k)
    return np.cumsum(np.asarray(hist)[:t])


def confusion_values(str measure, int n, uint64_t m, uint64_t total, uint64_t block0,
                     Py_ssize_t count, object bit_generator):
    """Measure values of ``count`` uniformly drawn compositions of ``m`` into ``n*n`` parts."""
    cdef int code = measure_code(measure)
    cdef int k = n * n, j
    cdef Py_ssize_t s
    cdef double md = <double>m
    cdef uint64_t mask, r
    cdef int bits = 0
    cdef int64_t[::1] x = np.zeros(k, dtype=np.int64)
    cdef double[::1] p = np.zeros(k)
    cdef double[::1] rows = np.zeros(n)
    cdef double[::1] cols = np.zeros(n)
    cdef double[::1] out = np.empty(count)
    cdef bitgen_t *rng = get_bitgen(bit_generator)
    r = total - 1
    while r:
        bits += 1
        r >>= 1
    mask = 0xFFFFFFFFFFFFFFFF if bits == 64 else ((<uint64_t>1) << bits) - 1
    with bit_generator.lock, nogil:
        for s in range(count):
            if bits == 0:
                r = 0
            else:
                r = rng.next_uint64(rng.state) & mask
                while r >= total:
                    r = rng.next_uint64(rng.state) & mask
            unrank(m, k, r, block0, &x[0])
            for j in range(k):
                p[j] = <double>x[j] / md
            out[s] = sigma(code, &p[0], n, &rows[0], &cols[0])
    return np.asarray(out)


def probability_values(str measure, int n, Py_ssize_t count, object bit_generator):
    """Measure values of ``count`` uniform points of the (n*n - 1)-simplex."""
    cdef int code = measure_code(measure)
    cdef int k = n * n, j
    cdef Py_ssize_t s
    cdef double total, e
    cdef double[::1] p = np.zeros(k)
    cdef double[::1] rows = np.zeros(n)
    cdef double[::1] cols = np.zeros(n)
    cdef double[::1] out = np.empty(count)
    cdef bitgen_t *rng = get_bitgen(bit_generator)
    with bit_generator.lock, nogil:
        for s in range(count):
            total = 0.0
            for j in range(k):
                e = -log(<double>((rng.next_uint64(rng.state) >> 11) + 1) * INV_2_53)
                p[j] = e
                total += e
            for j in range(k):
                p[j] = p[j] / total
            out[s] = sigma(code, &p[0], n, &rows[0], &cols[0])
    return np.asarray(out)


def simplex_points(int k, Py_ssize_t count, object bit_generator):
    """``count`` uniform points of the (k - 1)-simplex, one per row."""
    cdef Py_ssize_t s
    cdef int j
    cdef double total, e
    cdef double[:, ::1] out = np.empty((count, k))
    cdef bitgen_t *rng = get_bitgen(bit_generator)
    with bit_generator.lock, nogil:
        for s in range(count):
            total = 0.0
            for j in range(k):
                e = -log(<double>((rng.next_uint64(rng.state) >> 11) + 1) * INV_2_53)
                out[s, j] = e
                total += e
            for j in range(k):
                out[s, j] = out[s, j] / total
    return np.asarray(out)
