"""Top, bottom, and plain travels through a sign matrix.

The top travel walks a sign matrix from the upper-left corner: it moves right
while the sign matches the row's entering sign and steps down one row at the
first mismatch.  It is "positive" when the mismatch happens in the last row,
which certifies a one-sided circuit.  A plain travel is a candidate path
recorded only by its strictly increasing set of drop columns; realizing it
means finding the column reorientation whose top travel follows that path.
Plain travels are the travel-side counting device: each k-neighborly plain
travel accounts for exactly two k-neighborly reorientation subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .sign_core import SignMatrix, reorient_columns

__all__ = [
    "Travel",
    "PlainTravel",
    "top_travel",
    "bottom_travel",
    "is_acyclic_via_travel",
    "is_k_neighborly_matrix",
    "enumerate_plain_travels",
    "realize_plain_travel",
    "count_k_neighborly_plain_travels",
    "f_via_travels",
    "positivizing_set",
]


@dataclass(frozen=True)
class Travel:
    """A top or bottom travel: its cell path, drop columns, and positivity."""

    path: tuple[tuple[int, int], ...]
    kind: str  # "top" or "bottom"
    positive: bool
    drop_columns: tuple[int, ...]


@dataclass(frozen=True)
class PlainTravel:
    """Drop columns of a candidate top-travel path, strictly increasing, all >= 2."""

    drop_columns: tuple[int, ...]

    def __post_init__(self):
        d = self.drop_columns
        if any(c < 2 for c in d):
            raise ValueError("drop columns must be >= 2")
        if any(a >= b for a, b in zip(d, d[1:])):
            raise ValueError("drop columns must be strictly increasing")


def _walk_top(entries, r: int, n: int, flip: frozenset[int], record: bool):
    """Shared top-travel walker over 0-based entries.

    ``flip`` holds 1-based column labels whose signs are negated on the fly.
    Returns (path or None, drop_columns, positive).
    """

    def sgn(i, j):  # 0-based
        v = entries[i][j]
        return -v if (j + 1) in flip else v

    path = [(1, 1)] if record else None
    drops = []
    i = j = 0
    positive = False
    while True:
        anchor = sgn(i, j)
        while j < n - 1 and sgn(i, j + 1) == anchor:
            j += 1
            if record:
                path.append((i + 1, j + 1))
        if j == n - 1:
            break  # right edge reached with no mismatch left in this row
        j += 1  # mismatching entry belongs to this row's segment
        if record:
            path.append((i + 1, j + 1))
        if i == r - 1:
            positive = True  # sign change inside the last row
            break
        i += 1
        if record:
            path.append((i + 1, j + 1))
        drops.append(j + 1)
    return (tuple(path) if record else None), tuple(drops), positive


def top_travel(A: SignMatrix) -> Travel:
    """The unique top travel of A (needs n >= 2)."""
    if A.cols < 2:
        raise ValueError("top travel needs at least 2 columns")
    path, drops, positive = _walk_top(A.entries, A.rows, A.cols, frozenset(), True)
    return Travel(path, "top", positive, drops)


def bottom_travel(A: SignMatrix) -> Travel:
    """The unique bottom travel of A: the top travel of the 180-degree rotation."""
    if A.cols < 2:
        raise ValueError("bottom travel needs at least 2 columns")
    r, n = A.rows, A.cols
    rotated = tuple(tuple(reversed(row)) for row in reversed(A.entries))
    path, drops, positive = _walk_top(rotated, r, n, frozenset(), True)
    return Travel(
        tuple((r + 1 - i, n + 1 - j) for i, j in path),
        "bottom",
        positive,
        tuple(n + 1 - c for c in drops),
    )


def is_acyclic_via_travel(A: SignMatrix) -> bool:
    """True iff the top travel is not positive (no one-sided circuit)."""
    _, _, positive = _walk_top(A.entries, A.rows, A.cols, frozenset(), False)
    return not positive


def is_k_neighborly_matrix(A: SignMatrix, k: int) -> bool:
    """True iff no reorientation of at most k columns makes the top travel positive.

    Scans subsets by increasing size (all columns allowed, including column 1)
    and exits at the first positive travel found.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    r, n = A.rows, A.cols
    entries = A.entries
    for size in range(k + 1):
        for S in itertools.combinations(range(1, n + 1), size):
            _, _, positive = _walk_top(entries, r, n, frozenset(S), False)
            if positive:
                return False
    return True


def enumerate_plain_travels(r: int, n: int) -> list[PlainTravel]:
    """All plain travels of an r x n matrix, in lexicographic drop-set order.

    Drop sets range over subsets of {2..n} of size at most r-1; the empty set
    (the travel with no vertical movement) is included, so the total is
    sum of C(n-1, i) for i = 0..r-1.
    """
    if not (2 <= r <= n):
        raise ValueError(f"plain travels need 2 <= r <= n, got r={r}, n={n}")
    subsets = itertools.chain.from_iterable(
        itertools.combinations(range(2, n + 1), size) for size in range(r)
    )
    return [PlainTravel(d) for d in sorted(subsets)]


def realize_plain_travel(A: SignMatrix, P: PlainTravel) -> tuple[SignMatrix, frozenset[int]]:
    """The unique column set R with 1 not in R whose reorientation of A has top
    travel P, together with the reoriented matrix.

    Left-to-right forcing: off drop columns the sign must match the previous
    column in the travel's current row, at a drop column it must differ.
    """
    r, n = A.rows, A.cols
    drops = P.drop_columns
    if len(drops) > r - 1:
        raise ValueError(f"at most {r - 1} drops possible in {r} rows, got {len(drops)}")
    if drops and drops[-1] > n:
        raise ValueError(f"drop column {drops[-1]} out of range 2..{n}")
    drop_set = frozenset(drops)
    flips = []
    row = 1
    s_prev = 1  # column 1 is never flipped
    for c in range(2, n + 1):
        want_flip = c in drop_set
        s = s_prev * A.sign(row, c - 1) * A.sign(row, c)
        if want_flip:
            s = -s
            row += 1
        if s < 0:
            flips.append(c)
        s_prev = s
    R = frozenset(flips)
    return reorient_columns(A, R), R


def count_k_neighborly_plain_travels(A: SignMatrix, k: int) -> int:
    """Number of plain travels whose realized reorientation is k-neighborly."""
    if k < 0:
        raise ValueError("k must be non-negative")
    r, n = A.rows, A.cols
    if n < r + 1:
        raise ValueError(f"counting requires n >= r+1, got r={r}, n={n}")
    total = 0
    for P in enumerate_plain_travels(r, n):
        realized, _ = realize_plain_travel(A, P)
        if is_k_neighborly_matrix(realized, k):
            total += 1
    return total


def f_via_travels(A: SignMatrix, k: int) -> int:
    """Reorientation-subset count via plain travels: two subsets per travel."""
    return 2 * count_k_neighborly_plain_travels(A, k)


def positivizing_set(
    A: SignMatrix, k: int, allowed_columns: Iterable[int]
) -> frozenset[int] | None:
    """Smallest column set (by size, then lexicographic) within the allowed
    columns, of size at most k, whose reorientation makes the top travel
    positive; None if there is none.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    r, n = A.rows, A.cols
    allowed = sorted(set(int(c) for c in allowed_columns))
    for c in allowed:
        if not (1 <= c <= n):
            raise ValueError(f"column label {c} out of range 1..{n}")
    entries = A.entries
    for size in range(k + 1):
        for S in itertools.combinations(allowed, size):
            _, _, positive = _walk_top(entries, r, n, frozenset(S), False)
            if positive:
                return frozenset(S)
    return None
