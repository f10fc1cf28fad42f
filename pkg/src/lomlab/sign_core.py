"""Sign matrices, signed circuits, chirotopes, and reorientation counting.

A Lawrence oriented matroid on elements 1..n is described by an r x n matrix
of +1/-1 signs: every basis sign is a product of one entry per row taken along
an increasing column tuple, and the signs of the circuit on any (r+1)-element
support follow a first-order recurrence along that support.  A reorientation
is a subset R of columns; it is k-neighborly when every circuit of the
reoriented matroid keeps more than k positive and more than k negative
elements.  This module provides the exact, enumerate-everything engine for
those counts, both from a matrix and from a chirotope table (so that minors
can be counted too).

All row/column/element labels are 1-based at the API surface.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "SignMatrix",
    "SignedCircuit",
    "ChirotopeTable",
    "OVector",
    "alternating_matrix",
    "reorient_columns",
    "reorient_rows",
    "chirotope_sign",
    "circuit_of_support",
    "all_circuits",
    "is_k_neighborly_circuits",
    "count_k_neighborly_reorientations",
    "o_vector",
    "chirotope_from_matrix",
    "delete_element",
    "contract_element",
    "circuits_from_chirotope",
    "count_k_neighborly_reorientations_chirotope",
]

MAX_EXHAUSTIVE_ELEMENTS = 24  # 2^(n-1) reorientations are enumerated explicitly


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignMatrix:
    """An r x n matrix with entries +1/-1."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("matrix must have at least one row")
        n = len(self.entries[0])
        r = len(self.entries)
        if n < r or r < 1:
            raise ValueError(f"invalid dimensions: need 1 <= rows <= cols, got {r}x{n}")
        for row in self.entries:
            if len(row) != n:
                raise ValueError("all rows must have the same length")
            for v in row:
                if v not in (1, -1):
                    raise ValueError(f"matrix entries must be +1 or -1, got {v!r}")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def sign(self, i: int, j: int) -> int:
        """Entry at row i, column j (both 1-based)."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise ValueError(f"position ({i},{j}) outside {self.rows}x{self.cols} matrix")
        return self.entries[i - 1][j - 1]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "SignMatrix":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "SignMatrix":
        return cls(tuple(tuple(int(v) for v in row) for row in arr))

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int8)

    @classmethod
    def parse(cls, text: str) -> "SignMatrix":
        """Parse the matrix text format: one row per line, characters + or -.

        Lines starting with '#' are comments; blank lines are ignored.  Rows
        must not contain whitespace or any other character.
        """
        rows = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            if not raw or raw.startswith("#"):
                continue
            row = []
            for ch in raw:
                if ch == "+":
                    row.append(1)
                elif ch == "-":
                    row.append(-1)
                else:
                    raise ValueError(f"line {lineno}: invalid character {ch!r} in matrix row")
            rows.append(tuple(row))
        if not rows:
            raise ValueError("no matrix rows found")
        return cls(tuple(rows))

    def format(self) -> str:
        """Render in the matrix text format (one '+'/'-' row per line)."""
        return "\n".join("".join("+" if v > 0 else "-" for v in row) for row in self.entries)


@dataclass(frozen=True)
class SignedCircuit:
    """A circuit: an (r+1)-element support with one sign per element.

    Normalized so that the smallest support element carries +1; the opposite
    circuit (all signs reversed) is implicit.
    """

    support: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.support) != len(self.signs):
            raise ValueError("support and signs must have equal length")
        if any(b >= c for b, c in zip(self.support, self.support[1:])):
            raise ValueError("support must be strictly increasing")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("circuit signs must be +1 or -1")
        if self.signs[0] != 1:
            raise ValueError("circuit must be normalized: smallest element has sign +1")

    @property
    def positive_part(self) -> tuple[int, ...]:
        return tuple(e for e, s in zip(self.support, self.signs) if s > 0)

    @property
    def negative_part(self) -> tuple[int, ...]:
        return tuple(e for e, s in zip(self.support, self.signs) if s < 0)


@dataclass(frozen=True)
class ChirotopeTable:
    """Basis signs of a uniform rank-r oriented matroid on elements 1..n.

    ``signs`` holds one +1/-1 per r-subset of 1..n in lexicographic order.
    """

    rank: int
    ground_size: int
    signs: tuple[int, ...]
    _by_basis: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        if not (1 <= self.rank <= self.ground_size):
            raise ValueError(f"invalid dimensions: rank {self.rank}, ground size {self.ground_size}")
        expected = comb(self.ground_size, self.rank)
        if len(self.signs) != expected:
            raise ValueError(f"table must have {expected} signs, got {len(self.signs)}")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("chirotope signs must be +1 or -1")
        index = dict(zip(self.bases(), self.signs))
        object.__setattr__(self, "_by_basis", index)

    def bases(self) -> Iterator[tuple[int, ...]]:
        """All r-subsets of 1..n as sorted tuples, in lexicographic order."""
        return itertools.combinations(range(1, self.ground_size + 1), self.rank)

    def sign(self, basis: Sequence[int]) -> int:
        """Sign of a strictly increasing r-tuple."""
        key = tuple(basis)
        try:
            return self._by_basis[key]
        except KeyError:
            raise ValueError(f"{key} is not a sorted basis of this table") from None

    def negated(self) -> "ChirotopeTable":
        return ChirotopeTable(self.rank, self.ground_size, tuple(-s for s in self.signs))


@dataclass(frozen=True)
class OVector:
    """Counts of reorientation subsets by exact neighborliness level.

    ``entries[i]`` is the number of column subsets whose reorientation is
    i-neighborly but not (i+1)-neighborly, for i = 0..floor((r-1)/2).
    """

    entries: tuple[int, ...]

    def count_at_least(self, k: int) -> int:
        """Number of subsets that are at least k-neighborly."""
        return sum(self.entries[k:]) if k >= 0 else sum(self.entries)


# ---------------------------------------------------------------------------
# matrix-level operations
# ---------------------------------------------------------------------------

def alternating_matrix(r: int, n: int) -> SignMatrix:
    """The all-plus r x n matrix, whose oriented matroid has alternating circuits."""
    if not (1 <= r <= n):
        raise ValueError(f"invalid dimensions: need 1 <= r <= n, got r={r}, n={n}")
    return SignMatrix(tuple(tuple(1 for _ in range(n)) for _ in range(r)))


def _check_labels(labels: Iterable[int], upper: int, what: str) -> frozenset[int]:
    out = frozenset(int(x) for x in labels)
    for x in out:
        if not (1 <= x <= upper):
            raise ValueError(f"{what} label {x} out of range 1..{upper}")
    return out


def reorient_columns(A: SignMatrix, columns: Iterable[int]) -> SignMatrix:
    """Negate every entry of the given columns (1-based labels)."""
    flip = _check_labels(columns, A.cols, "column")
    if not flip:
        return A
    return SignMatrix(
        tuple(
            tuple(-v if (j + 1) in flip else v for j, v in enumerate(row))
            for row in A.entries
        )
    )


def reorient_rows(A: SignMatrix, rows: Iterable[int]) -> SignMatrix:
    """Negate every entry of the given rows; the oriented matroid is unchanged."""
    flip = _check_labels(rows, A.rows, "row")
    if not flip:
        return A
    return SignMatrix(
        tuple(
            tuple(-v for v in row) if (i + 1) in flip else row
            for i, row in enumerate(A.entries)
        )
    )


def chirotope_sign(A: SignMatrix, basis: Sequence[int]) -> int:
    """Basis sign: the product of a[i][j_i] along the increasing tuple j_1<...<j_r."""
    basis = tuple(int(b) for b in basis)
    if len(basis) != A.rows:
        raise ValueError(f"basis must have {A.rows} elements, got {len(basis)}")
    if any(b >= c for b, c in zip(basis, basis[1:])):
        raise ValueError("basis must be strictly increasing")
    if basis[0] < 1 or basis[-1] > A.cols:
        raise ValueError(f"basis labels must lie in 1..{A.cols}")
    sign = 1
    for i, j in enumerate(basis, start=1):
        sign *= A.sign(i, j)
    return sign


def _circuit_signs(A: SignMatrix, support: tuple[int, ...]) -> tuple[int, ...]:
    # X_{j_1} = +1; X_{j_{i+1}} = -X_{j_i} * a[i][j_i] * a[i][j_{i+1}]
    signs = [1]
    for i in range(1, len(support)):
        prev = support[i - 1]
        cur = support[i]
        signs.append(-signs[-1] * A.sign(i, prev) * A.sign(i, cur))
    return tuple(signs)


def circuit_of_support(A: SignMatrix, support: Sequence[int]) -> SignedCircuit:
    """The circuit on an (r+1)-element support, normalized to +1 on its minimum."""
    support = tuple(int(e) for e in support)
    if len(support) != A.rows + 1:
        raise ValueError(f"support must have {A.rows + 1} elements, got {len(support)}")
    if any(b >= c for b, c in zip(support, support[1:])):
        raise ValueError("support must be strictly increasing")
    if support[0] < 1 or support[-1] > A.cols:
        raise ValueError(f"support labels must lie in 1..{A.cols}")
    return SignedCircuit(support, _circuit_signs(A, support))


def all_circuits(A: SignMatrix) -> list[SignedCircuit]:
    """Every circuit, one per (r+1)-support, in lexicographic support order."""
    r, n = A.rows, A.cols
    return [
        SignedCircuit(support, _circuit_signs(A, support))
        for support in itertools.combinations(range(1, n + 1), r + 1)
    ]


def is_k_neighborly_circuits(A: SignMatrix, reoriented: Iterable[int], k: int) -> bool:
    """Is the reorientation of the given column set k-neighborly?

    Checks every circuit of A: after flipping the signs of the reoriented
    elements, both the positive and the negative side must keep more than k
    elements.  Exits on the first violating circuit.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    flip = _check_labels(reoriented, A.cols, "element")
    r, n = A.rows, A.cols
    size = r + 1
    for support in itertools.combinations(range(1, n + 1), size):
        signs = _circuit_signs(A, support)
        pos = sum(1 for e, s in zip(support, signs) if (s > 0) != (e in flip))
        if not (k < pos < size - k):
            return False
    return True


# ---------------------------------------------------------------------------
# vectorized counting engine
#
# Circuits are packed as bitmasks over elements (element j -> bit j-1).  For a
# reorientation mask R the positive side of a circuit with support mask S and
# positive mask P has popcount(P XOR (S AND R)) elements, so neighborliness is
# a pure popcount test.  Complement pairing (R vs its complement) lets us scan
# only the masks with element 1 unflipped and double the tally.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _MaskContext:
    rank: int
    ground_size: int
    supports: np.ndarray       # (C, r+1) int64, 0-based columns
    support_bits: np.ndarray   # (C, r+1) uint32
    support_masks: np.ndarray  # (C,) uint32
    row_index: np.ndarray      # (1, r) for fancy indexing


@lru_cache(maxsize=64)
def _mask_context(r: int, n: int) -> _MaskContext:
    supports = np.array(
        list(itertools.combinations(range(n), r + 1)), dtype=np.int64
    ).reshape(-1, r + 1)
    bits = np.uint32(1) << supports.astype(np.uint32)
    return _MaskContext(
        rank=r,
        ground_size=n,
        supports=supports,
        support_bits=bits,
        support_masks=bits.sum(axis=1, dtype=np.uint32),
        row_index=np.arange(r)[None, :],
    )


@lru_cache(maxsize=16)
def _half_reorientation_masks(n: int) -> np.ndarray:
    # all subsets of {2..n} as bitmasks (element 1 = bit 0 stays clear)
    return np.arange(2 ** (n - 1), dtype=np.uint32) << np.uint32(1)


def _circuit_masks_from_entries(entries: np.ndarray, ctx: _MaskContext) -> np.ndarray:
    """Positive-part bitmask of every circuit of an int8 sign array."""
    left = entries[ctx.row_index, ctx.supports[:, :-1]]
    right = entries[ctx.row_index, ctx.supports[:, 1:]]
    steps = (left * right) * np.int8(-1)
    signs = np.cumprod(steps, axis=1, dtype=np.int8)  # signs at j_2..j_{r+1}
    pos = np.where(signs > 0, ctx.support_bits[:, 1:], np.uint32(0)).sum(
        axis=1, dtype=np.uint32
    )
    return pos + ctx.support_bits[:, 0]  # minimum element always +1


_R_BLOCK = 1 << 13


def _neighborliness_levels(
    pos_masks: np.ndarray, support_masks: np.ndarray, n: int, r: int
) -> np.ndarray:
    """min over circuits of min(|positive side|, |negative side|), per half-mask.

    Level m means the reorientation is (m-1)-neighborly but not m-neighborly;
    m = 0 means some circuit goes one-sided (not even acyclic).
    """
    reor = _half_reorientation_masks(n)
    size = np.int8(r + 1)
    out = np.empty(reor.shape[0], dtype=np.int8)
    for lo in range(0, reor.shape[0], _R_BLOCK):
        block = reor[lo : lo + _R_BLOCK]
        x = support_masks[:, None] & block[None, :]
        x ^= pos_masks[:, None]
        cnt = np.bitwise_count(x).astype(np.int8)
        np.minimum(cnt, size - cnt, out=cnt)
        out[lo : lo + block.shape[0]] = cnt.min(axis=0)
    return out


def _count_from_masks(
    pos_masks: np.ndarray, support_masks: np.ndarray, n: int, r: int, k: int
) -> int:
    levels = _neighborliness_levels(pos_masks, support_masks, n, r)
    return 2 * int(np.count_nonzero(levels >= k + 1))


def _require_countable(r: int, n: int) -> None:
    if n < r + 1:
        raise ValueError(f"counting requires n >= r+1 (no circuits at r={r}, n={n})")
    if n > MAX_EXHAUSTIVE_ELEMENTS:
        raise ValueError(f"exhaustive counting supports at most n={MAX_EXHAUSTIVE_ELEMENTS} elements")


def count_k_neighborly_reorientations(A: SignMatrix, k: int) -> int:
    """Number of column subsets R whose reorientation of A is k-neighborly.

    Counts subsets of 1..n (not reorientation classes); the result is always
    even because R and its complement reorient to the same circuits up to a
    global sign flip.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    r, n = A.rows, A.cols
    _require_countable(r, n)
    ctx = _mask_context(r, n)
    pos = _circuit_masks_from_entries(A.to_array(), ctx)
    return _count_from_masks(pos, ctx.support_masks, n, r, k)


def o_vector(A: SignMatrix) -> OVector:
    """Histogram of reorientation subsets by their exact neighborliness level."""
    r, n = A.rows, A.cols
    _require_countable(r, n)
    ctx = _mask_context(r, n)
    pos = _circuit_masks_from_entries(A.to_array(), ctx)
    levels = _neighborliness_levels(pos, ctx.support_masks, n, r)
    width = (r - 1) // 2 + 1
    counts = np.bincount(levels, minlength=width + 1)
    return OVector(tuple(2 * int(c) for c in counts[1 : width + 1]))


# ---------------------------------------------------------------------------
# chirotope-level operations
# ---------------------------------------------------------------------------

def chirotope_from_matrix(A: SignMatrix) -> ChirotopeTable:
    """Tabulate every basis sign of the matrix's oriented matroid."""
    r, n = A.rows, A.cols
    signs = []
    for basis in itertools.combinations(range(1, n + 1), r):
        sign = 1
        for i, j in enumerate(basis, start=1):
            sign *= A.entries[i - 1][j - 1]
        signs.append(sign)
    return ChirotopeTable(r, n, tuple(signs))


def delete_element(T: ChirotopeTable, e: int) -> ChirotopeTable:
    """Remove element e; labels above e shift down by one, basis signs carry over."""
    r, n = T.rank, T.ground_size
    if n - 1 < r:
        raise ValueError(f"cannot delete: rank {r} needs at least {r} of {n} elements")
    if not (1 <= e <= n):
        raise ValueError(f"element {e} out of range 1..{n}")
    signs = []
    for basis in itertools.combinations(range(1, n), r):
        old = tuple(b if b < e else b + 1 for b in basis)
        signs.append(T.sign(old))
    return ChirotopeTable(r, n - 1, tuple(signs))


def contract_element(T: ChirotopeTable, e: int) -> ChirotopeTable:
    """Contract element e, dropping the rank by one.

    The new sign of a basis B is the old sign of B + {e} with the parity of
    moving e from the end of the tuple to its sorted position.  The result is
    well-defined up to a global negation, which no downstream count sees.
    """
    r, n = T.rank, T.ground_size
    if r < 2:
        raise ValueError("cannot contract below rank 1")
    if not (1 <= e <= n):
        raise ValueError(f"element {e} out of range 1..{n}")
    signs = []
    for basis in itertools.combinations(range(1, n), r - 1):
        old = tuple(b if b < e else b + 1 for b in basis)
        below = sum(1 for b in old if b < e)
        parity = -1 if (len(old) - below) % 2 else 1
        merged = tuple(sorted(old + (e,)))
        signs.append(parity * T.sign(merged))
    return ChirotopeTable(r - 1, n - 1, tuple(signs))


def circuits_from_chirotope(T: ChirotopeTable) -> list[SignedCircuit]:
    """Recover every circuit from adjacent-basis sign ratios.

    On a support j_1<...<j_{r+1} the signs obey
    X_{j_{i+1}} = -X_{j_i} * chi(support - j_i) * chi(support - j_{i+1}),
    normalized to +1 on the minimum element.
    """
    r, n = T.rank, T.ground_size
    out = []
    for support in itertools.combinations(range(1, n + 1), r + 1):
        signs = [1]
        for i in range(r):
            without_cur = support[:i] + support[i + 1 :]
            without_next = support[: i + 1] + support[i + 2 :]
            signs.append(-signs[-1] * T.sign(without_cur) * T.sign(without_next))
        out.append(SignedCircuit(support, tuple(signs)))
    return out


def _masks_from_circuits(
    circuits: Iterable[SignedCircuit], n: int
) -> tuple[np.ndarray, np.ndarray]:
    supports = []
    positives = []
    for c in circuits:
        s = 0
        p = 0
        for e, sign in zip(c.support, c.signs):
            bit = 1 << (e - 1)
            s |= bit
            if sign > 0:
                p |= bit
        supports.append(s)
        positives.append(p)
    return (
        np.array(positives, dtype=np.uint32),
        np.array(supports, dtype=np.uint32),
    )


def count_k_neighborly_reorientations_chirotope(T: ChirotopeTable, k: int) -> int:
    """As count_k_neighborly_reorientations, but driven by a chirotope table."""
    if k < 0:
        raise ValueError("k must be non-negative")
    r, n = T.rank, T.ground_size
    _require_countable(r, n)
    pos, sup = _masks_from_circuits(circuits_from_chirotope(T), n)
    return _count_from_masks(pos, sup, n, r, k)
