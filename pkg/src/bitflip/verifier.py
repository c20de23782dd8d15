"""Exhaustive t-error verification, structural failure scans and certificates.

Every error pattern is checked against the zero codeword: the decoder reads
only the syndrome, so the transmitted codeword cannot change a run.

In ``adversarial`` mode a pattern passes only if every possible sequence of
argmax choices ends with S empty and the estimate equal to the true support;
in ``existential`` mode one such sequence suffices; ``fixed`` runs a single
configured decoder.  Ties between right and wrong blocks therefore count as
adversarial failures.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Sequence

from .decoder import (
    DecodeResult,
    DecoderConfig,
    Status,
    TraceStep,
    active_monitor,
    argmax_flips,
    decode,
)
from .errors import BudgetExceededError, NotLeftRegularError, NotPartialGeometryError, TrivialCodeError
from .geometry import ConfigurationWitness, find_configuration, max_pairwise_intersection
from .gf2 import (
    BinaryMatrix,
    BlockSystem,
    code_id,
    column_blocks,
    indices_from_mask,
    mask_from_indices,
    matrix_digest,
    min_distance,
    same_code,
)

VERIFY_BUDGET = 10**7


@dataclass(frozen=True)
class VerifyMode:
    kind: str = "adversarial"  # fixed | adversarial | existential
    config: DecoderConfig | None = None

    def __post_init__(self):
        if self.kind not in ("fixed", "adversarial", "existential"):
            raise ValueError(f"unknown verify mode {self.kind!r}")
        if self.kind == "fixed" and self.config is None:
            object.__setattr__(self, "config", DecoderConfig())
        if self.kind != "fixed" and self.config is not None:
            raise ValueError("adversarial/existential modes explore step-by-step runs only")

    @classmethod
    def coerce(cls, mode: "VerifyMode | str") -> "VerifyMode":
        return mode if isinstance(mode, cls) else cls(mode)

    def describe(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind}
        if self.config is not None:
            tb = self.config.tie_break
            out["variant"] = self.config.variant.value
            out["tie_break"] = tb.kind if tb.value is None else f"{tb.kind}:{tb.value}"
            out["max_iterations"] = self.config.max_iterations
        return out


@dataclass(frozen=True)
class ExploreResult:
    passed: bool
    witness: DecodeResult


@dataclass(frozen=True)
class PatternFailure:
    support: tuple[int, ...]
    witness: DecodeResult


@dataclass(frozen=True)
class VerifyReport:
    t: int
    patterns_checked: int
    failures: tuple[PatternFailure, ...]
    mode: VerifyMode
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return not self.failures


def _run_from_path(blocks: BlockSystem, S0: int, path: Sequence[TraceStep]) -> DecodeResult:
    S, est = S0, 0
    for step in path:
        for i in step.flipped:
            S ^= blocks.blocks[i]
            est ^= 1 << i
    status = Status.SUCCESS if S == 0 else Status.STALL
    return DecodeResult(status, frozenset(indices_from_mask(est)), tuple(path), S0.bit_count(), S)


def _search(blocks: BlockSystem, S0: int, target: int, want_failure: bool):
    """DFS over all argmax choices; returns a path to a wanted leaf, or None.

    A wanted leaf is a failing one (adversarial) or a successful one
    (existential).  The syndrome is S0 xor syndrome(est), so memoizing on the
    estimate alone collapses transpositions of independent flips.
    """
    B = blocks.blocks
    memo: dict[int, tuple[TraceStep, ...] | None] = {}
    mon = active_monitor()

    def rec(est: int, S: int):
        if est in memo:
            return memo[est]
        top, cands = argmax_flips(blocks, S)
        if not cands:
            good = S == 0 and est == target
            res = () if good != want_failure else None
        else:
            res = None
            before = S.bit_count()
            for i in cands:
                S2 = S ^ B[i]
                after = S2.bit_count()
                if mon is not None:
                    mon.record(before, after)
                sub = rec(est ^ (1 << i), S2)
                if sub is not None:
                    res = (TraceStep((i,), top, after),) + sub
                    break
        memo[est] = res
        return res

    if mon is not None:
        mon.runs += 1
    return rec(0, S0)


def explore_runs(blocks: BlockSystem, error_support, mode: VerifyMode | str = "adversarial") -> ExploreResult:
    """Decide one error pattern under the given mode, with a witness run.

    The witness is a failing run if one exists (adversarial), a successful
    run if one exists (existential), and the lowest-index run otherwise.
    """
    mode = VerifyMode.coerce(mode)
    target = mask_from_indices(error_support)
    S0 = 0
    for i in indices_from_mask(target):
        S0 ^= blocks.blocks[i]
    if mode.kind == "fixed":
        run = decode(blocks, S0, mode.config)
        ok = run.status is Status.SUCCESS and run.estimated_error == frozenset(indices_from_mask(target))
        return ExploreResult(ok, run)
    want_failure = mode.kind == "adversarial"
    path = _search(blocks, S0, target, want_failure)
    if path is None:
        return ExploreResult(want_failure, decode(blocks, S0))
    return ExploreResult(not want_failure, _run_from_path(blocks, S0, path))


def pattern_count(n: int, t: int) -> int:
    return sum(comb(n, i) for i in range(1, t + 1))


def _check_task(blocks: BlockSystem, mode: VerifyMode, size: int, first: int):
    count = 0
    failures = []
    for rest in combinations(range(first + 1, blocks.n), size - 1):
        support = (first,) + rest
        count += 1
        res = explore_runs(blocks, support, mode)
        if not res.passed:
            failures.append(PatternFailure(support, res.witness))
    return count, failures


def _as_blocks(H: BinaryMatrix | BlockSystem) -> BlockSystem:
    return H if isinstance(H, BlockSystem) else column_blocks(H)


def verify_exhaustive(
    H: BinaryMatrix | BlockSystem,
    t: int,
    mode: VerifyMode | str = "adversarial",
    jobs: int = 1,
    budget: int = VERIFY_BUDGET,
) -> VerifyReport:
    """Check every error pattern of weight 1..t."""
    blocks = _as_blocks(H)
    mode = VerifyMode.coerce(mode)
    n = blocks.n
    if t < 0:
        raise ValueError("t must be >= 0")
    t = min(t, n)
    total = pattern_count(n, t)
    if total > budget:
        raise BudgetExceededError(f"{total} error patterns exceed budget {budget}")
    start = time.perf_counter()
    tasks = [(size, first) for size in range(1, t + 1) for first in range(n - size + 1)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(
                pool.map(
                    _check_task,
                    [blocks] * len(tasks),
                    [mode] * len(tasks),
                    [s for s, _ in tasks],
                    [f for _, f in tasks],
                )
            )
    else:
        parts = [_check_task(blocks, mode, s, f) for s, f in tasks]
    checked = sum(c for c, _ in parts)
    failures = sorted((f for _, fs in parts for f in fs), key=lambda f: (len(f.support), f.support))
    return VerifyReport(t, checked, tuple(failures), mode, time.perf_counter() - start)


@dataclass(frozen=True)
class PairFailure:
    pair: tuple[int, int]
    third: int | None  # block that ties or beats the right blocks
    reason: str  # "wrong_block" or "stall"


def two_error_scan(blocks: BlockSystem) -> list[PairFailure]:
    """Pairs {i, j} whose double error bit-flipping can fail to correct.

    A pair fails if some third block k has c - s_ij <= s_ik + s_jk - 2 s_ijk,
    or if the right blocks themselves do not exceed c/2 (c - s_ij <= c/2).
    """
    B = blocks.blocks
    c = blocks.block_size
    n = len(B)
    out = []
    for i, j in combinations(range(n), 2):
        s_ij = (B[i] & B[j]).bit_count()
        right = c - s_ij
        if 2 * right <= c:
            out.append(PairFailure((i, j), None, "stall"))
            continue
        for k in range(n):
            if k == i or k == j:
                continue
            s_ik = (B[i] & B[k]).bit_count()
            s_jk = (B[j] & B[k]).bit_count()
            s_ijk = (B[i] & B[j] & B[k]).bit_count()
            if right <= s_ik + s_jk - 2 * s_ijk:
                out.append(PairFailure((i, j), k, "wrong_block"))
                break
    return out


@dataclass(frozen=True)
class StructuralVerdict:
    passed: bool
    witness: ConfigurationWitness | None


def structural_t3_scan_c5(blocks: BlockSystem) -> StructuralVerdict:
    """Three-error verdict for c = 5 partial geometries: fail iff four lines form a complete quadrilateral."""
    if blocks.block_size != 5:
        raise ValueError(f"three-error criterion needs c = 5, got c = {blocks.block_size}")
    if blocks.n >= 2 and max_pairwise_intersection(blocks) > 1:
        raise NotPartialGeometryError("blocks share more than one point")
    if blocks.n < 4:
        return StructuralVerdict(True, None)
    w = find_configuration(blocks, 4)
    return StructuralVerdict(w is None, w)


@dataclass(frozen=True)
class Certificate:
    code_id: str
    candidate_digest: str
    rows: int
    column_weight: int | None
    d_min: int | None
    t_target: int | None
    mode: str
    verdict: str
    failed_clause: str | None
    rho_upper_bound: int | None
    patterns_checked: int
    failure_count: int
    metadata: dict = field(default_factory=dict)


def certify_pseudoredundancy(
    H_reference: BinaryMatrix,
    H_candidate: BinaryMatrix,
    jobs: int = 1,
    budget: int = VERIFY_BUDGET,
    metadata: dict | None = None,
) -> Certificate:
    """Certify rho(code) <= rows(H_candidate) by adversarial verification."""
    if H_reference.ncols != H_candidate.ncols:
        raise ValueError(f"column counts differ: {H_reference.ncols} vs {H_candidate.ncols}")
    meta = dict(metadata or {})
    meta.setdefault("requires_left_regular", True)
    base = dict(
        code_id=code_id(H_reference),
        candidate_digest=matrix_digest(H_candidate),
        rows=H_candidate.nrows,
        mode="adversarial",
        metadata=meta,
    )

    def fail(clause: str, **kw) -> Certificate:
        fields = dict(column_weight=None, d_min=None, t_target=None, patterns_checked=0, failure_count=0)
        fields.update(kw)
        return Certificate(**base, **fields, verdict="fail", failed_clause=clause, rho_upper_bound=None)

    if not same_code(H_reference, H_candidate):
        return fail("same_code")
    try:
        blocks = column_blocks(H_candidate)
    except NotLeftRegularError:
        return fail("left_regular")
    c = blocks.block_size
    try:
        d = min_distance(H_reference)
    except TrivialCodeError:
        return fail("trivial_code", column_weight=c)
    t = (d - 1) // 2
    report = verify_exhaustive(blocks, t, "adversarial", jobs=jobs, budget=budget)
    if not report.passed:
        return fail(
            "adversarial_verify",
            column_weight=c,
            d_min=d,
            t_target=t,
            patterns_checked=report.patterns_checked,
            failure_count=len(report.failures),
        )
    return Certificate(
        **base,
        column_weight=c,
        d_min=d,
        t_target=t,
        verdict="pass",
        failed_clause=None,
        rho_upper_bound=H_candidate.nrows,
        patterns_checked=report.patterns_checked,
        failure_count=0,
    )
