"""Bit-flipping decoding over the block-system formulation.

The decoder only sees the syndrome set S; flipping position i replaces S by
S xor B_i and toggles i in the estimated error.  A flip is only ever taken
when u_i = |B_i & S| > c/2, so in step-by-step mode |S| drops by
2*u_i - c >= 1 each step.
"""

from __future__ import annotations

import random
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .gf2 import BlockSystem, indices_from_mask, mask_from_indices, syndrome_of_mask


class Variant(str, Enum):
    STEP_BY_STEP = "step_by_step"
    PARALLEL = "parallel"


class Status(str, Enum):
    SUCCESS = "success"
    STALL = "stall"
    ITERATION_CAP = "iteration_cap"


@dataclass(frozen=True)
class TieBreak:
    """How a step-by-step run chooses among the maximizers of u.

    kind is ``lowest_index``, ``seeded_random`` (``value`` = seed) or
    ``forced_first`` (``value`` = index flipped in iteration 1, lowest index
    afterwards).
    """

    kind: str = "lowest_index"
    value: int | None = None

    def __post_init__(self):
        if self.kind not in ("lowest_index", "seeded_random", "forced_first"):
            raise ValueError(f"unknown tie-break {self.kind!r}")
        if self.kind != "lowest_index" and self.value is None:
            raise ValueError(f"tie-break {self.kind} needs a value")

    @classmethod
    def parse(cls, text: str) -> "TieBreak":
        """Parse ``lowest``, ``seed:N`` or ``first:K``."""
        if text == "lowest":
            return cls()
        key, _, val = text.partition(":")
        kinds = {"seed": "seeded_random", "first": "forced_first"}
        if key not in kinds or not val.lstrip("-").isdigit():
            raise ValueError(f"bad tie-break {text!r}; expected lowest, seed:N or first:K")
        return cls(kinds[key], int(val))


@dataclass(frozen=True)
class DecoderConfig:
    variant: Variant = Variant.STEP_BY_STEP
    tie_break: TieBreak = field(default_factory=TieBreak)
    max_iterations: int | None = None  # None: |S0| (step-by-step) or n (parallel)

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.variant is Variant.PARALLEL and self.tie_break.kind == "forced_first":
            raise ValueError("forced_first applies to the step-by-step variant only")


@dataclass(frozen=True)
class TraceStep:
    flipped: tuple[int, ...]
    unsat: int  # u of the flipped indices, before the flip
    weight_after: int  # |S| after the flip


@dataclass(frozen=True)
class DecodeResult:
    status: Status
    estimated_error: frozenset[int]
    trace: tuple[TraceStep, ...]
    initial_weight: int
    final_syndrome: int = 0

    def weights(self) -> list[int]:
        """|S| before the first flip and after every flip."""
        return [self.initial_weight] + [s.weight_after for s in self.trace]


# Optional observer that checks |S| monotonicity of every step-by-step flip.

@dataclass
class MonotonicityMonitor:
    flips: int = 0
    runs: int = 0
    violations: list[tuple[int, int]] = field(default_factory=list)

    def record(self, before: int, after: int) -> None:
        self.flips += 1
        if not after < before:
            self.violations.append((before, after))


_monitor: MonotonicityMonitor | None = None


@contextmanager
def monitor_monotonicity(existing: MonotonicityMonitor | None = None) -> Iterator[MonotonicityMonitor]:
    """Record every in-process step-by-step flip while the context is active."""
    global _monitor
    prev = _monitor
    _monitor = existing if existing is not None else MonotonicityMonitor()
    try:
        yield _monitor
    finally:
        _monitor = prev


def active_monitor() -> MonotonicityMonitor | None:
    return _monitor


def unsat_counts(blocks: BlockSystem, S: int) -> list[int]:
    """u_i = |B_i & S| for every block."""
    return [(b & S).bit_count() for b in blocks.blocks]


def argmax_flips(blocks: BlockSystem, S: int) -> tuple[int, list[int]]:
    """(max u, indices attaining it), or (max u, []) if the stop rule holds."""
    u = unsat_counts(blocks, S)
    top = max(u)
    if 2 * top <= blocks.block_size:
        return top, []
    return top, [i for i, x in enumerate(u) if x == top]


def decode(blocks: BlockSystem, S0: int | Iterable[int], config: DecoderConfig | None = None) -> DecodeResult:
    """Run bit-flipping from syndrome S0 (bitset or iterable of check indices)."""
    config = config or DecoderConfig()
    S = S0 if isinstance(S0, int) else mask_from_indices(S0)
    initial = S.bit_count()
    if config.variant is Variant.STEP_BY_STEP:
        return _decode_step(blocks, S, initial, config)
    return _decode_parallel(blocks, S, initial, config)


def _decode_step(blocks: BlockSystem, S: int, initial: int, config: DecoderConfig) -> DecodeResult:
    cap = config.max_iterations if config.max_iterations is not None else max(initial, 1)
    tb = config.tie_break
    rng = random.Random(tb.value) if tb.kind == "seeded_random" else None
    est = 0
    trace = []
    mon = _monitor
    if mon is not None:
        mon.runs += 1
    while True:
        top, cands = argmax_flips(blocks, S)
        if not cands:
            status = Status.SUCCESS if S == 0 else Status.STALL
            break
        if len(trace) >= cap:
            status = Status.ITERATION_CAP
            break
        if tb.kind == "forced_first" and not trace:
            if tb.value not in cands:
                raise ValueError(
                    f"forced first flip {tb.value} is not a maximizer of u (maximizers: {cands})"
                )
            i = tb.value
        elif rng is not None:
            i = rng.choice(cands)
        else:
            i = cands[0]
        before = S.bit_count()
        S ^= blocks.blocks[i]
        est ^= 1 << i
        after = S.bit_count()
        if mon is not None:
            mon.record(before, after)
        trace.append(TraceStep((i,), top, after))
    return DecodeResult(status, frozenset(indices_from_mask(est)), tuple(trace), initial, S)


def _decode_parallel(blocks: BlockSystem, S: int, initial: int, config: DecoderConfig) -> DecodeResult:
    cap = config.max_iterations if config.max_iterations is not None else blocks.n
    est = 0
    trace = []
    seen = {S}
    while True:
        top, cands = argmax_flips(blocks, S)
        if not cands:
            status = Status.SUCCESS if S == 0 else Status.STALL
            break
        if len(trace) >= cap:
            status = Status.ITERATION_CAP
            break
        for i in cands:
            S ^= blocks.blocks[i]
            est ^= 1 << i
        trace.append(TraceStep(tuple(cands), top, S.bit_count()))
        if S in seen:
            status = Status.STALL
            break
        seen.add(S)
    return DecodeResult(status, frozenset(indices_from_mask(est)), tuple(trace), initial, S)


def decode_word(
    blocks: BlockSystem, received: Sequence[int] | int, config: DecoderConfig | None = None
) -> tuple[int, DecodeResult]:
    """Decode a received word (bitset over positions or 0/1 list).

    Returns the corrected word as a bitset together with the run.
    """
    if isinstance(received, int):
        y = received
    else:
        y = mask_from_indices(i for i, b in enumerate(received) if b)
    result = decode(blocks, syndrome_of_mask(blocks, y), config)
    return y ^ mask_from_indices(result.estimated_error), result
