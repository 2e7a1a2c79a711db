"""Better-response swap dynamics over exchange-blocking pairs."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .evaluate import (
    BlockingPair,
    ScoreVector,
    find_blocking_pairs,
    raw_utility,
    raw_utility_if_swapped,
    score_levels,
    score_vector,
    w_better,
    welfare,
)
from .model import Arrangement, Instance, Utility, is_symmetric, require_valid, swap


@dataclass(frozen=True)
class PotentialSnapshot:
    kind: str  # "welfare" or "score_vector"
    value: Fraction | ScoreVector
    guaranteed: bool  # whether each blocking-pair swap provably improves it

    def improves_on(self, other: "PotentialSnapshot") -> bool:
        if self.kind != other.kind:
            raise ValueError("potentials of different kinds")
        if self.kind == "score_vector":
            return w_better(self.value, other.value)
        return self.value > other.value


def potential(inst: Instance, arr: Arrangement, levels=None) -> PotentialSnapshot:
    """Welfare for S, score vector for W.

    For B the welfare is returned for diagnostics with ``guaranteed=False``;
    no potential is claimed for B-utility swap dynamics.
    """
    if not is_symmetric(inst.valuations):
        raise ValueError("potential functions need symmetric preferences")
    if inst.utility is Utility.W:
        return PotentialSnapshot("score_vector", score_vector(inst, arr, levels), True)
    return PotentialSnapshot("welfare", welfare(inst, arr), inst.utility is Utility.S)


@dataclass(frozen=True)
class PairSelectionPolicy:
    kind: str = "first"  # first | best | random
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("first", "best", "random"):
            raise ValueError(f"unknown policy {self.kind!r}")

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "PairSelectionPolicy":
        aliases = {"first-by-index": "first", "best-improvement": "best"}
        return cls(aliases.get(text, text), seed)


@dataclass(frozen=True)
class Step:
    pair: tuple[int, int]
    potential: PotentialSnapshot | None


@dataclass
class Trace:
    initial: Arrangement
    final: Arrangement
    steps: list[Step] = field(default_factory=list)
    terminated: bool = False
    initial_potential: PotentialSnapshot | None = None
    guaranteed: bool = False  # symmetric S/W: termination is certain
    cycle_detected: bool = False

    @property
    def step_count(self) -> int:
        return len(self.steps)

    def potentials(self) -> list[PotentialSnapshot]:
        return [self.initial_potential] + [s.potential for s in self.steps]

    def replay(self) -> Arrangement:
        arr = self.initial
        for s in self.steps:
            arr = swap(arr, *s.pair)
        return arr


def _gain(inst, arr, bp: BlockingPair) -> int:
    p, q = bp.p, bp.q
    return (
        raw_utility_if_swapped(inst, arr, p, q)
        - raw_utility(inst, arr, p)
        + raw_utility_if_swapped(inst, arr, q, p)
        - raw_utility(inst, arr, q)
    )


def _choose(inst, arr, pairs: list[BlockingPair], policy: PairSelectionPolicy, rng) -> BlockingPair:
    if policy.kind == "first":
        return pairs[0]
    if policy.kind == "best":
        # max total gain; the earliest pair wins ties
        return max(pairs, key=lambda bp: (_gain(inst, arr, bp), -bp.p, -bp.q))
    return pairs[rng.randrange(len(pairs))]


def run_swap_dynamics(
    inst: Instance,
    start: Arrangement,
    policy: PairSelectionPolicy | None = None,
    max_steps: int | None = None,
    detect_cycles: bool = False,
) -> Trace:
    """Swap exchange-blocking pairs until none remains or ``max_steps`` is hit.

    With symmetric preferences and S- or W-utility every swap strictly
    improves the potential, so an unbounded run always terminates. For other
    instances the run is best-effort; ``terminated=False`` flags a cut-off.
    """
    require_valid(inst)
    if max_steps is None:
        max_steps = inst.n**4
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    policy = policy or PairSelectionPolicy()
    rng = random.Random(policy.seed)

    symmetric = is_symmetric(inst.valuations)
    levels = score_levels(inst) if symmetric else None
    pot = potential(inst, start, levels) if symmetric else None
    trace = Trace(
        initial=start,
        final=start,
        initial_potential=pot,
        guaranteed=symmetric and inst.utility in (Utility.S, Utility.W),
    )
    seen = {start.seat_of} if detect_cycles else None
    arr = start
    while True:
        pairs = find_blocking_pairs(inst, arr)
        if not pairs:
            trace.terminated = True
            break
        if trace.step_count >= max_steps:
            break
        bp = _choose(inst, arr, pairs, policy, rng)
        arr = swap(arr, bp.p, bp.q)
        pot = potential(inst, arr, levels) if symmetric else None
        trace.steps.append(Step((bp.p, bp.q), pot))
        if seen is not None:
            if arr.seat_of in seen:
                trace.cycle_detected = True
                break
            seen.add(arr.seat_of)
    trace.final = arr
    return trace
