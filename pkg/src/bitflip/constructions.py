"""Parity-check matrices from finite planes and cyclic Hamming/simplex codes.

Orderings are canonical so every construction is byte-reproducible:
projective points and lines are normalized homogeneous vectors (first nonzero
coordinate 1) in lexicographic order of their element encodings; affine
points and line coefficient vectors are nonzero pairs in lexicographic order.
Incidence matrices have points as rows and lines as columns.
"""

from __future__ import annotations

from itertools import combinations, product

from .errors import ConstructionError
from .fields import FiniteField, field_of_order, is_irreducible, _monics
from .gf2 import BinaryMatrix, indices_from_mask, rank, same_code


def _normalized_vectors(F: FiniteField, dim: int) -> list[tuple[int, ...]]:
    out = []
    for v in product(range(F.order), repeat=dim):
        nz = next((a for a in v if a), None)
        if nz == 1:
            out.append(v)
    return out


def projective_plane(q: int) -> BinaryMatrix:
    """Point-line incidence matrix of PG(2, q), size (q^2+q+1) square."""
    F = field_of_order(q)
    vecs = _normalized_vectors(F, 3)
    rows = []
    for point in vecs:
        row = 0
        for i, line in enumerate(vecs):
            if F.dot(point, line) == 0:
                row |= 1 << i
        rows.append(row)
    return BinaryMatrix.from_rows(rows, len(vecs))


def euclidean_punctured(q: int) -> BinaryMatrix:
    """Incidence of EG(2, q) minus the origin and the lines through it.

    Line ``a`` is ``{x : a . x = 1}`` for nonzero ``a``; size (q^2-1) square.
    """
    F = field_of_order(q)
    vecs = [v for v in product(range(F.order), repeat=2) if any(v)]
    rows = []
    for point in vecs:
        row = 0
        for i, a in enumerate(vecs):
            if F.dot(point, a) == 1:
                row |= 1 << i
        rows.append(row)
    return BinaryMatrix.from_rows(rows, len(vecs))


def primitive_polynomial(m: int) -> int:
    """Smallest primitive binary polynomial of degree m, as a bit mask."""
    n = (1 << m) - 1
    for f in _monics(2, m):
        if not is_irreducible(f, 2):
            continue
        mask = sum(b << i for i, b in enumerate(f))
        v, order = 1, 0
        while True:
            v <<= 1
            if v >> m:
                v ^= mask
            order += 1
            if v == 1:
                break
        if order == n:
            return mask
    raise AssertionError("primitive polynomials exist in every degree")


def _powers_of_alpha(m: int) -> list[int]:
    mask = primitive_polynomial(m)
    out, v = [], 1
    for _ in range((1 << m) - 1):
        out.append(v)
        v <<= 1
        if v >> m:
            v ^= mask
    return out


def hamming_matrix(m: int) -> BinaryMatrix:
    """m x (2^m-1) Hamming matrix; column i is the binary expansion of i+1."""
    n = (1 << m) - 1
    rows = [sum(1 << i for i in range(n) if ((i + 1) >> b) & 1) for b in range(m)]
    return BinaryMatrix.from_rows(rows, n)


def cyclic_hamming_matrix(m: int) -> BinaryMatrix:
    """m x (2^m-1) Hamming matrix in cyclic form; column i is alpha^i."""
    powers = _powers_of_alpha(m)
    rows = [sum(1 << i for i, v in enumerate(powers) if (v >> b) & 1) for b in range(m)]
    return BinaryMatrix.from_rows(rows, len(powers))


def _rotate(v: int, shift: int, n: int) -> int:
    shift %= n
    return ((v << shift) | (v >> (n - shift))) & ((1 << n) - 1)


def _circulant(seed: int, n: int) -> BinaryMatrix:
    return BinaryMatrix.from_rows([_rotate(seed, j, n) for j in range(n)], n)


def _support_key(v: int) -> list[int]:
    return indices_from_mask(v)


def hamming_circulant_seed(m: int) -> int:
    """Simplex codeword containing position 0 with lexicographically least support."""
    if m < 2:
        raise ValueError("hamming circulant needs m >= 2")
    gens = cyclic_hamming_matrix(m).bits
    words = []
    for coeffs in product((0, 1), repeat=m):
        w = 0
        for c, g in zip(coeffs, gens):
            if c:
                w ^= g
        if w & 1:
            words.append(w)
    return min(words, key=_support_key)


def hamming_circulant(m: int) -> BinaryMatrix:
    """n x n circulant of a simplex codeword; its null space is the Hamming code."""
    n = (1 << m) - 1
    H = _circulant(hamming_circulant_seed(m), n)
    if rank(H) != m:
        raise ConstructionError(f"circulant rank {rank(H)} != {m}")
    if not same_code(H, cyclic_hamming_matrix(m)):
        raise ConstructionError("circulant does not define the Hamming code")
    if set(H.column_weights()) != {1 << (m - 1)}:
        raise ConstructionError("circulant column weights are not 2^(m-1)")
    return H


def simplex_weight3_matrix(m: int) -> BinaryMatrix:
    """All weight-3 Hamming codewords as rows; r = n(n-1)/6, column weight (n-1)/2."""
    if m < 3:
        raise ValueError("simplex weight-3 matrix needs m >= 3")
    n = (1 << m) - 1
    rows = [
        (1 << i) | (1 << j) | (1 << k)
        for i, j, k in combinations(range(n), 3)
        if (i + 1) ^ (j + 1) ^ (k + 1) == 0
    ]
    return BinaryMatrix.from_rows(rows, n)


def simplex_circulant_seed(m: int) -> int:
    """Lexicographically least weight-3 codeword of the cyclic Hamming code."""
    if m < 3:
        raise ValueError("simplex circulant needs m >= 3")
    powers = _powers_of_alpha(m)
    n = len(powers)
    for i, j, k in combinations(range(n), 3):
        if powers[i] ^ powers[j] ^ powers[k] == 0:
            return (1 << i) | (1 << j) | (1 << k)
    raise AssertionError("Hamming codes with m >= 3 have weight-3 words")


def simplex_circulant(m: int) -> BinaryMatrix:
    """n x n circulant of a weight-3 Hamming codeword (column weight 3)."""
    return _circulant(simplex_circulant_seed(m), (1 << m) - 1)
