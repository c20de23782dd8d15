"""Structural analysis of block systems: intersections, configurations, expansion."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import BudgetExceededError, NotPartialGeometryError
from .gf2 import BlockSystem, indices_from_mask

UNION_BUDGET = 10**7


@dataclass(frozen=True)
class ConfigurationWitness:
    """k blocks meeting pairwise in C(k,2) distinct points.

    ``intersection_points`` follows ``itertools.combinations`` order of the
    block pairs.
    """

    block_indices: tuple[int, ...]
    intersection_points: tuple[int, ...]


def max_pairwise_intersection(blocks: BlockSystem) -> int:
    B = blocks.blocks
    if len(B) < 2:
        raise ValueError("need at least two blocks")
    return max((a & b).bit_count() for a, b in combinations(B, 2))


def find_configuration(blocks: BlockSystem, k: int) -> ConfigurationWitness | None:
    """Lexicographically first set of k pairwise-meeting blocks with distinct meeting points."""
    B = blocks.blocks
    n = len(B)
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= {n}, got {k}")
    if max_pairwise_intersection(blocks) > 1:
        raise NotPartialGeometryError("blocks share more than one point")

    chosen: list[int] = []
    points: list[int] = []

    def extend(start: int, used: int) -> bool:
        if len(chosen) == k:
            return True
        for j in range(start, n - (k - len(chosen)) + 1):
            new = 0
            ok = True
            for i in chosen:
                x = B[i] & B[j]
                if not x or x & (used | new):
                    ok = False
                    break
                new |= x
            if not ok:
                continue
            chosen.append(j)
            mark = len(points)
            points.extend(B[i] & B[j] for i in chosen[:-1])
            if extend(j + 1, used | new):
                return True
            chosen.pop()
            del points[mark:]
        return False

    if not extend(0, 0):
        return None
    # points were appended per new block; reorder to combinations() pair order
    pair_point = {}
    pos = 0
    for idx in range(1, k):
        for prev in range(idx):
            pair_point[(prev, idx)] = points[pos]
            pos += 1
    ordered = [pair_point[p] for p in combinations(range(k), 2)]
    return ConfigurationWitness(
        tuple(chosen), tuple(indices_from_mask(x)[0] for x in ordered)
    )


def _check_budget(n: int, t: int, budget: int, c: int) -> None:
    if not 1 <= t <= n:
        raise ValueError(f"need 1 <= t <= {n}, got {t}")
    if comb(n, t) > budget:
        raise BudgetExceededError(
            f"C({n},{t}) = {comb(n, t)} subsets exceeds budget {budget}; "
            f"use the analytic bound c*t - C(t,2)*s = {c}*{t} - {comb(t, 2)}*s instead"
        )


def min_union(blocks: BlockSystem, t: int, budget: int = UNION_BUDGET) -> tuple[int, tuple[int, ...]]:
    """Smallest union of t blocks and the lexicographically first subset attaining it."""
    B = blocks.blocks
    n = len(B)
    _check_budget(n, t, budget, blocks.block_size)
    best = [blocks.universe_size + 1, ()]
    chosen: list[int] = []

    def search(start: int, union: int) -> None:
        size = union.bit_count()
        if size >= best[0]:
            return
        if len(chosen) == t:
            best[0], best[1] = size, tuple(chosen)
            return
        for j in range(start, n - (t - len(chosen)) + 1):
            chosen.append(j)
            search(j + 1, union | B[j])
            chosen.pop()

    search(0, 0)
    return best[0], best[1]


def min_union_size(blocks: BlockSystem, t: int, budget: int = UNION_BUDGET) -> int:
    return min_union(blocks, t, budget)[0]


def union_size_distribution(blocks: BlockSystem, t: int, budget: int = UNION_BUDGET) -> dict[int, int]:
    """Histogram of |B_i1 u ... u B_it| over all t-subsets."""
    _check_budget(blocks.n, t, budget, blocks.block_size)
    hist: Counter[int] = Counter()
    for combo in combinations(blocks.blocks, t):
        u = 0
        for b in combo:
            u |= b
        hist[u.bit_count()] += 1
    return dict(sorted(hist.items()))


@dataclass(frozen=True)
class ExpansionResult:
    passed: bool
    alpha: Fraction
    t_max: int
    min_unions: tuple[int, ...]  # min union size for t = 1..(last t examined)
    failing_t: int | None = None
    witness: tuple[int, ...] | None = None


def expansion_check(
    blocks: BlockSystem, t_max: int, alpha: Fraction | int | str, budget: int = UNION_BUDGET
) -> ExpansionResult:
    """True iff every t <= t_max blocks cover more than alpha*t points (exact arithmetic)."""
    alpha = Fraction(alpha)
    unions = []
    for t in range(1, t_max + 1):
        size, subset = min_union(blocks, t, budget)
        unions.append(size)
        if not size > alpha * t:
            return ExpansionResult(False, alpha, t_max, tuple(unions), t, subset)
    return ExpansionResult(True, alpha, t_max, tuple(unions))


def design_pseudoweight_bound(c: int, s: int) -> Fraction:
    """Lower bound 1 + c/s on minimum pseudoweights of a partial (c, s) design."""
    if c < 1 or s < 1:
        raise ValueError("need c >= 1 and s >= 1")
    return 1 + Fraction(c, s)
