"""Bundled instances: the named construction families and the four-error frame example."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import constructions as cons
from .errors import ConstructionError
from .gf2 import BinaryMatrix, BlockSystem, indices_from_mask, syndrome

FAMILIES = ("pg", "eg", "hamming-circulant", "simplex-w3", "simplex-circulant", "fig1")

# Check positions of the frame example: the 16 boundary cells of a 5x5 grid
# in (x, y) lexicographic order, then the two interior cells.
FIG1_POINTS: tuple[tuple[float, float], ...] = tuple(
    (x, y) for x in range(5) for y in range(5) if x in (0, 4) or y in (0, 4)
) + ((1.5, 2), (2.5, 2))


def _cells(pred) -> list[int]:
    return [j for j, p in enumerate(FIG1_POINTS) if pred(*p)]


def fig1_instance() -> tuple[BlockSystem, tuple[int, ...]]:
    """Five blocks of size 5 on 18 checks, and the four-error support {0,1,2,3}.

    Blocks 0..3 are the bottom row, left column, top row and right column of
    the frame, so blocks 0,2 and 1,3 are the disjoint pairs; block 4 is the
    cross through the three edge midpoints and the two interior cells.
    """
    sides = [
        _cells(lambda x, y: y == 0),
        _cells(lambda x, y: x == 0),
        _cells(lambda x, y: y == 4),
        _cells(lambda x, y: x == 4),
    ]
    cross = _cells(lambda x, y: (x, y) in ((2, 4), (0, 2), (4, 2), (1.5, 2), (2.5, 2)))
    blocks = BlockSystem.from_sets(len(FIG1_POINTS), sides + [cross])
    support = (0, 1, 2, 3)

    B = blocks.blocks
    S = syndrome(blocks, support)
    checks = [
        not B[0] & B[2] and not B[1] & B[3],
        all((B[i] & B[j]).bit_count() == 1 for i, j in ((0, 1), (0, 3), (1, 2), (2, 3))),
        S.bit_count() == 12,
        (B[4] & S).bit_count() == 3,
    ]
    if not all(checks):
        raise ConstructionError(f"frame instance failed its invariants: {checks}")
    return blocks, support


@dataclass(frozen=True)
class Construction:
    family: str
    params: dict
    matrix: BinaryMatrix
    metadata: dict = field(default_factory=dict)


def build_family(family: str, q: int | None = None, m: int | None = None) -> Construction:
    """Dispatch a family name to its construction, recording seed choices."""

    def need(value, name):
        if value is None:
            raise ValueError(f"family {family} needs --{name}")
        return value

    meta: dict = {}
    if family == "pg":
        H = cons.projective_plane(need(q, "q"))
        params = {"q": q}
    elif family == "eg":
        H = cons.euclidean_punctured(need(q, "q"))
        params = {"q": q}
    elif family == "hamming-circulant":
        params = {"m": need(m, "m")}
        H = cons.hamming_circulant(m)
        meta["seed_support"] = indices_from_mask(cons.hamming_circulant_seed(m))
        meta["seed_rule"] = "simplex codeword containing position 0, lexicographically least support"
        meta["primitive_polynomial"] = bin(cons.primitive_polynomial(m))
    elif family == "simplex-w3":
        params = {"m": need(m, "m")}
        H = cons.simplex_weight3_matrix(m)
    elif family == "simplex-circulant":
        params = {"m": need(m, "m")}
        H = cons.simplex_circulant(m)
        meta["seed_support"] = indices_from_mask(cons.simplex_circulant_seed(m))
        meta["seed_rule"] = "lexicographically least weight-3 cyclic Hamming codeword"
        meta["primitive_polynomial"] = bin(cons.primitive_polynomial(m))
    elif family == "fig1":
        blocks, support = fig1_instance()
        H = blocks.to_matrix()
        params = {}
        meta["error_support"] = list(support)
        meta["check_coordinates"] = [list(p) for p in FIG1_POINTS]
    else:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    return Construction(family, params, H, meta)


def random_left_regular(
    rng: random.Random, n: int, r: int, c: int, partial_geometry: bool = False, attempts: int = 200
) -> BlockSystem | None:
    """n random c-subsets of r checks; with partial_geometry, greedily keep only
    subsets meeting every earlier block in at most one check.

    Returns None when the greedy pass cannot place n blocks in n * attempts draws.
    """
    if not 1 <= c <= r:
        raise ValueError("need 1 <= c <= r")
    sets: list[set[int]] = []
    for _ in range(n * attempts):
        if len(sets) == n:
            break
        cand = set(rng.sample(range(r), c))
        if not partial_geometry or all(len(cand & s) <= 1 for s in sets):
            sets.append(cand)
    if len(sets) < n:
        return None
    return BlockSystem.from_sets(r, sets)
