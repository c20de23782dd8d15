"""GF(2) linear algebra on bit-packed rows, and the block-system view of H.

Rows and blocks are stored as Python ints used as bitsets, so XOR, AND and
popcount act on whole machine words at once.  Bit ``i`` of a row is the
entry in column ``i``; bit ``j`` of a block is check (row) ``j``.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InstanceTooLargeError, NotLeftRegularError, TrivialCodeError

MIN_DISTANCE_CAP = 28

# Syndromes and error supports are plain int bitsets; these helpers convert.


def mask_from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def indices_from_mask(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class BinaryMatrix:
    """Dense r x n matrix over GF(2) with bit-packed rows."""

    nrows: int
    ncols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.ncols < 1:
            raise ValueError("a binary matrix needs at least one column")
        # nrows == 0 is allowed: the generator of a dimension-0 code.
        if self.nrows < 0 or len(self.bits) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.bits)}")
        limit = 1 << self.ncols
        for row in self.bits:
            if row < 0 or row >= limit:
                raise ValueError(f"row {row:#x} does not fit in {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[int], ncols: int) -> "BinaryMatrix":
        return cls(len(rows), ncols, tuple(int(r) for r in rows))

    @classmethod
    def from_supports(cls, supports: Sequence[Iterable[int]], ncols: int) -> "BinaryMatrix":
        """Build from the list of column indices set in each row."""
        return cls.from_rows([mask_from_indices(s) for s in supports], ncols)

    @classmethod
    def from_array(cls, array) -> "BinaryMatrix":
        a = np.asarray(array, dtype=np.int64) & 1
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows = [int(sum(1 << int(i) for i in np.flatnonzero(row))) for row in a]
        return cls(a.shape[0], a.shape[1], tuple(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> "BinaryMatrix":
        """Build from column bitsets (bit j of ``columns[i]`` is entry (j, i))."""
        rows = [0] * nrows
        for i, col in enumerate(columns):
            for j in indices_from_mask(col):
                if j >= nrows:
                    raise ValueError(f"column {i} has entry in row {j} >= {nrows}")
                rows[j] |= 1 << i
        return cls(nrows, len(columns), tuple(rows))

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for j, row in enumerate(self.bits):
            out[j, indices_from_mask(row)] = 1
        return out

    def __getitem__(self, key: tuple[int, int]) -> int:
        j, i = key
        if not (0 <= j < self.nrows and 0 <= i < self.ncols):
            raise IndexError(key)
        return (self.bits[j] >> i) & 1

    def columns(self) -> list[int]:
        cols = [0] * self.ncols
        for j, row in enumerate(self.bits):
            bit = 1 << j
            for i in indices_from_mask(row):
                cols[i] |= bit
        return cols

    def column_weights(self) -> list[int]:
        return [c.bit_count() for c in self.columns()]

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self.bits]

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(self.ncols, self.nrows, tuple(self.columns()))

    def stack(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column counts differ")
        return BinaryMatrix(self.nrows + other.nrows, self.ncols, self.bits + other.bits)

    def mul_vector(self, vec: int) -> int:
        """H . v^T as a bitset over rows."""
        out = 0
        for j, row in enumerate(self.bits):
            if (row & vec).bit_count() & 1:
                out |= 1 << j
        return out


@dataclass(frozen=True)
class BlockSystem:
    """Columns of a left-regular H as c-subsets of the check set [r]."""

    universe_size: int
    blocks: tuple[int, ...]
    block_size: int

    def __post_init__(self):
        limit = 1 << self.universe_size
        for i, b in enumerate(self.blocks):
            if b.bit_count() != self.block_size:
                raise ValueError(f"block {i} has size {b.bit_count()}, expected {self.block_size}")
            if b >= limit:
                raise ValueError(f"block {i} has a point >= {self.universe_size}")

    @classmethod
    def from_sets(cls, universe_size: int, sets: Sequence[Iterable[int]]) -> "BlockSystem":
        blocks = tuple(mask_from_indices(s) for s in sets)
        if not blocks:
            raise ValueError("need at least one block")
        return cls(universe_size, blocks, blocks[0].bit_count())

    @property
    def n(self) -> int:
        return len(self.blocks)

    def block(self, i: int) -> frozenset[int]:
        return frozenset(indices_from_mask(self.blocks[i]))

    def to_matrix(self) -> BinaryMatrix:
        return BinaryMatrix.from_columns(self.blocks, self.universe_size)


def _reduce(rows: Iterable[int]) -> dict[int, int]:
    """XOR basis keyed by leading bit."""
    basis: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead not in basis:
                basis[lead] = row
                break
            row ^= basis[lead]
    return basis


def rank(M: BinaryMatrix) -> int:
    return len(_reduce(M.bits))


def rref_rows(M: BinaryMatrix) -> list[int]:
    """Fully reduced row-echelon basis of the row space, pivots on lowest bits.

    The result depends only on the row space, so it identifies the code.
    """
    basis: dict[int, int] = {}
    for row in M.bits:
        for p, b in basis.items():
            if (row >> p) & 1:
                row ^= b
        if not row:
            continue
        p = (row & -row).bit_length() - 1
        for q in basis:
            if (basis[q] >> p) & 1:
                basis[q] ^= row
        basis[p] = row
    return [basis[p] for p in sorted(basis)]


def nullspace_basis(H: BinaryMatrix) -> BinaryMatrix:
    """Generator matrix (k rows) of the code {x : H x^T = 0}."""
    n = H.ncols
    reduced = rref_rows(H)
    pivots = [(r & -r).bit_length() - 1 for r in reduced]
    pivot_set = set(pivots)
    gens = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = 1 << f
        for p, r in zip(pivots, reduced):
            if (r >> f) & 1:
                v |= 1 << p
        gens.append(v)
    return BinaryMatrix(len(gens), n, tuple(gens))


def dimension(H: BinaryMatrix) -> int:
    return H.ncols - rank(H)


def _min_weight_python(gens: Sequence[int]) -> int:
    best = None
    cur = 0
    for i in range(1, 1 << len(gens)):
        cur ^= gens[(i & -i).bit_length() - 1]
        w = cur.bit_count()
        if best is None or w < best:
            best = w
            if best == 1:
                break
    return best


def _min_weight_numpy(gens: Sequence[int], low_bits: int = 14) -> int:
    # All combinations of the low generators form a lookup table; the high
    # generators are walked in Gray order, one table-wide XOR per step.
    low, high = gens[:low_bits], gens[low_bits:]
    table = np.zeros(1, dtype=np.uint64)
    for g in low:
        table = np.concatenate([table, table ^ np.uint64(g)])
    weights = np.bitwise_count(table[1:])
    best = int(weights.min())
    cur = np.uint64(0)
    for i in range(1, 1 << len(high)):
        cur ^= np.uint64(high[(i & -i).bit_length() - 1])
        w = int(np.bitwise_count(table ^ cur).min())
        if w < best:
            best = w
    return best


def min_distance(H: BinaryMatrix, cap: int = MIN_DISTANCE_CAP) -> int:
    """Minimum weight over all nonzero codewords, by Gray-code enumeration."""
    G = nullspace_basis(H)
    k = G.nrows
    if k == 0:
        raise TrivialCodeError("code has dimension 0; minimum distance undefined")
    if k > cap:
        raise InstanceTooLargeError(f"dimension {k} exceeds enumeration cap {cap}")
    if k > 16 and H.ncols <= 64:
        return _min_weight_numpy(G.bits)
    return _min_weight_python(G.bits)


def syndrome(blocks: BlockSystem, error_support: Iterable[int]) -> int:
    """Symmetric difference of the blocks indexed by ``error_support``."""
    s = 0
    for i in error_support:
        s ^= blocks.blocks[i]
    return s


def syndrome_of_mask(blocks: BlockSystem, error_mask: int) -> int:
    s = 0
    while error_mask:
        low = error_mask & -error_mask
        s ^= blocks.blocks[low.bit_length() - 1]
        error_mask ^= low
    return s


def column_blocks(H: BinaryMatrix) -> BlockSystem:
    cols = H.columns()
    weights = Counter(c.bit_count() for c in cols)
    if len(weights) != 1 or 0 in weights:
        raise NotLeftRegularError(dict(weights))
    (c,) = weights
    return BlockSystem(H.nrows, tuple(cols), c)


def same_code(H1: BinaryMatrix, H2: BinaryMatrix) -> bool:
    """True iff both matrices have the same null space."""
    if H1.ncols != H2.ncols:
        raise ValueError(f"column counts differ: {H1.ncols} vs {H2.ncols}")
    r1 = rank(H1)
    return r1 == rank(H2) == rank(H1.stack(H2))


def matrix_digest(M: BinaryMatrix) -> str:
    """sha256 over the shape and the packed rows of one specific matrix."""
    width = (M.ncols + 3) // 4
    text = f"{M.nrows} {M.ncols}\n" + "".join(f"{r:0{width}x}\n" for r in M.bits)
    return hashlib.sha256(text.encode()).hexdigest()


def code_id(H: BinaryMatrix) -> str:
    """Digest of the code itself: the reduced echelon basis of H's row space."""
    basis = rref_rows(H)
    return matrix_digest(BinaryMatrix(len(basis), H.ncols, tuple(basis)))
