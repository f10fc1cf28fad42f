"""Optional JIT-compiled survey kernel.

The survey's circuits engine spends essentially all its time on one loop:
build the canonical representative of a class index, derive the circuit
bitmasks, then test every half-space reorientation mask against every
circuit with early exit.  When numba is importable the whole loop runs
compiled; otherwise the survey falls back to the per-class numpy engine.
Both paths produce identical integers and are cross-checked in the tests.
"""

from __future__ import annotations

import itertools

import numpy as np

from .chessboard import relevant_squares

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without the extra
    numba = None

HAVE_JIT = numba is not None


if HAVE_JIT:

    @numba.njit(cache=True)
    def _survey_chunk_kernel(lo, hi, r, n, rel_i, rel_j, supports, pop, k, hist):
        C = supports.shape[0]
        size = r + 1
        half = 1 << (n - 1)
        nbits = rel_i.shape[0]
        alt_f = -1
        A = np.ones((r, n), dtype=np.int8)
        sigma = np.ones((r - 1, n - 1), dtype=np.int8)
        pos = np.empty(C, dtype=np.int64)
        sup = np.empty(C, dtype=np.int64)
        for c in range(C):
            m = 0
            for p in range(size):
                m |= 1 << supports[c, p]
            sup[c] = m
        for index in range(lo, hi):
            for t in range(nbits):
                sigma[rel_i[t], rel_j[t]] = -1 if (index >> t) & 1 else 1
            for i in range(r - 1):
                for j in range(n - 1):
                    A[i + 1, j + 1] = sigma[i, j] * A[i, j] * A[i, j + 1] * A[i + 1, j]
            for c in range(C):
                x = np.int8(1)
                m = 1 << supports[c, 0]
                for p in range(1, size):
                    row = p - 1
                    x = -x * A[row, supports[c, p - 1]] * A[row, supports[c, p]]
                    if x > 0:
                        m |= 1 << supports[c, p]
                pos[c] = m
            total = 0
            for t in range(half):
                R = t << 1
                ok = True
                for c in range(C):
                    cnt = pop[(sup[c] & R) ^ pos[c]]
                    if cnt <= k or cnt >= size - k:
                        ok = False
                        break
                if ok:
                    total += 1
            f = 2 * total
            hist[f] += 1
            if index == 0:
                alt_f = f
        return alt_f


class JitSurveyContext:
    """Prepared arrays for one (rank, elements, k); reusable across chunks."""

    def __init__(self, r: int, n: int, k: int):
        if not HAVE_JIT:
            raise RuntimeError("numba is not available")
        self.r, self.n, self.k = r, n, k
        squares = relevant_squares(r, n)
        self.rel_i = np.array([i - 1 for i, _ in squares], dtype=np.int64)
        self.rel_j = np.array([j - 1 for _, j in squares], dtype=np.int64)
        self.supports = np.array(
            list(itertools.combinations(range(n), r + 1)), dtype=np.int64
        ).reshape(-1, r + 1)
        self.popcount = np.array(
            [bin(x).count("1") for x in range(1 << n)], dtype=np.uint8
        )

    def run(self, lo: int, hi: int) -> tuple[dict[int, int], int | None]:
        hist = np.zeros(2**self.n + 1, dtype=np.int64)
        alt = _survey_chunk_kernel(
            lo,
            hi,
            self.r,
            self.n,
            self.rel_i,
            self.rel_j,
            self.supports,
            self.popcount,
            self.k,
            hist,
        )
        counts = {int(f): int(c) for f, c in enumerate(hist) if c}
        return counts, (int(alt) if alt >= 0 else None)
