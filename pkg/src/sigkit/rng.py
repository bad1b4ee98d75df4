"""Reproducible 64-bit random streams.

Every stream is a Philox4x64 counter-based generator keyed by
``SeedSequence(seed, spawn_key=(stream_id,))``.  Numpy guarantees the raw
output of a seeded bit generator is stable across platforms and releases, and
both the compiled kernels and the Python fallback read the same raw words in
the same order.
"""

from __future__ import annotations

import numpy as np

SEED_MASK = (1 << 64) - 1
_INV_2_53 = 2.0 ** -53


class RngStream:
    def __init__(self, seed: int = 0, stream_id: int = 0):
        if not 0 <= seed <= SEED_MASK:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        if stream_id < 0:
            raise ValueError(f"stream_id must be nonnegative, got {stream_id}")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        self.bit_generator = np.random.Philox(
            np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        )

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"

    def raw(self, size=None):
        """Next raw 64-bit words (``np.uint64``)."""
        return self.bit_generator.random_raw(size)

    def next_word(self) -> int:
        return int(self.bit_generator.random_raw())

    def below(self, total: int) -> int:
        """Uniform integer in ``[0, total)`` by masked rejection; exact for any size."""
        if total < 1:
            raise ValueError(f"total must be positive, got {total}")
        bits = (total - 1).bit_length()
        if bits == 0:
            return 0
        words = (bits + 63) // 64
        mask = (1 << bits) - 1
        while True:
            r = 0
            for w in range(words):
                r |= self.next_word() << (64 * w)
            r &= mask
            if r < total:
                return r

    def uniform_open0(self, size=None):
        """Uniforms in (0, 1] built from the top 53 bits of each word."""
        return ((self.raw(size) >> np.uint64(11)) + np.uint64(1)) * _INV_2_53


def worker_streams(seed: int, workers: int):
    return [RngStream(seed, w) for w in range(workers)]


def split_count(total: int, workers: int):
    """Split ``total`` samples across workers, lower-indexed workers taking the remainder."""
    base, extra = divmod(total, workers)
    return [base + (1 if w < extra else 0) for w in range(workers)]
