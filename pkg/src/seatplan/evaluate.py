"""Utilities, envy, exchange-blocking pairs, welfare and the w-better order.

Everything is computed on the integer-scaled copy of the valuation matrix and
converted back to :class:`~fractions.Fraction` at the API boundary, so results
are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import Arrangement, Instance, Utility, is_symmetric


def _combine(utility: Utility, vals):
    # vals is a non-empty list of scaled ints
    if utility is Utility.S:
        return sum(vals)
    if utility is Utility.B:
        return max(vals)
    return min(vals)


def raw_utility(inst: Instance, arr: Arrangement, p: int) -> int:
    """Utility of ``p`` scaled by ``inst.valuations.scale`` (an int)."""
    nbrs = inst.seats.adj[arr.seat_of[p]]
    if not nbrs:
        return 0
    row = inst.valuations.scaled[p]
    at = arr.agent_at
    return _combine(inst.utility, [row[at[v]] for v in nbrs])


def raw_utility_if_swapped(inst: Instance, arr: Arrangement, p: int, q: int) -> int:
    """Scaled utility of ``p`` in the arrangement where p and q trade seats.

    Only the neighbourhood of q's seat is inspected; if p sits next to q, then
    after the swap q occupies p's old seat and is p's neighbour.
    """
    nbrs = inst.seats.adj[arr.seat_of[q]]
    if not nbrs:
        return 0
    row = inst.valuations.scaled[p]
    at = arr.agent_at
    vals = [row[q] if at[v] == p else row[at[v]] for v in nbrs]
    return _combine(inst.utility, vals)


def _frac(inst: Instance, raw: int) -> Fraction:
    return Fraction(raw, inst.valuations.scale)


def utility(inst: Instance, arr: Arrangement, p: int) -> Fraction:
    return _frac(inst, raw_utility(inst, arr, p))


def utilities(inst: Instance, arr: Arrangement) -> list[Fraction]:
    return [utility(inst, arr, p) for p in range(inst.n)]


def welfare(inst: Instance, arr: Arrangement) -> Fraction:
    return _frac(inst, sum(raw_utility(inst, arr, p) for p in range(inst.n)))


def min_utility(inst: Instance, arr: Arrangement) -> Fraction:
    if inst.n == 0:
        raise ValueError("empty instance has no minimum utility")
    return _frac(inst, min(raw_utility(inst, arr, p) for p in range(inst.n)))


def envies(inst: Instance, arr: Arrangement, p: int, q: int) -> bool:
    """True iff p strictly gains by trading seats with q (ties are not envy)."""
    if p == q:
        raise ValueError("an agent cannot envy itself")
    return raw_utility_if_swapped(inst, arr, p, q) > raw_utility(inst, arr, p)


@dataclass(frozen=True, order=True)
class BlockingPair:
    p: int
    q: int


def find_blocking_pairs(inst: Instance, arr: Arrangement, mode: str = "all") -> list[BlockingPair]:
    """Exchange-blocking pairs ``(p, q)``, ``p < q``, in lexicographic order.

    ``mode="first"`` stops at the first pair found.
    """
    if mode not in ("all", "first"):
        raise ValueError(f"unknown mode {mode!r}")
    n = inst.n
    base = [raw_utility(inst, arr, p) for p in range(n)]
    out = []
    for p in range(n):
        for q in range(p + 1, n):
            if (
                raw_utility_if_swapped(inst, arr, p, q) > base[p]
                and raw_utility_if_swapped(inst, arr, q, p) > base[q]
            ):
                out.append(BlockingPair(p, q))
                if mode == "first":
                    return out
    return out


def find_envy(inst: Instance, arr: Arrangement) -> tuple[int, int] | None:
    """First ordered pair (p, q) with p envying q, or None."""
    n = inst.n
    for p in range(n):
        base = raw_utility(inst, arr, p)
        for q in range(n):
            if q != p and raw_utility_if_swapped(inst, arr, p, q) > base:
                return p, q
    return None


def is_envy_free(inst: Instance, arr: Arrangement) -> bool:
    return find_envy(inst, arr) is None


def is_exchange_stable(inst: Instance, arr: Arrangement) -> bool:
    return not find_blocking_pairs(inst, arr, mode="first")


# ---------------------------------------------------------------------------
# score vectors and the w-better order


@dataclass(frozen=True)
class ScoreVector:
    """Edge counts per pair-score level, levels sorted from highest to lowest."""

    levels: tuple[Fraction, ...]
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.levels) != len(self.counts):
            raise ValueError("levels and counts differ in length")


def score_levels(inst: Instance) -> tuple[Fraction, ...]:
    """All distinct pair scores of a symmetric instance, descending."""
    return tuple(sorted(set(inst.valuations.distinct_values()), reverse=True))


def score_vector(inst: Instance, arr: Arrangement, levels=None) -> ScoreVector:
    if not is_symmetric(inst.valuations):
        raise ValueError("score vectors are only defined for symmetric preferences")
    if levels is None:
        levels = score_levels(inst)
    index = {s: i for i, s in enumerate(levels)}
    counts = [0] * len(levels)
    at = arr.agent_at
    rows = inst.valuations.rows
    for u, v in inst.seats.edges:
        counts[index[rows[at[u]][at[v]]]] += 1
    return ScoreVector(tuple(levels), tuple(counts))


def w_better(a: ScoreVector, b: ScoreVector) -> bool:
    """True iff ``a`` is w-better than ``b``.

    Scanning from the lowest score level upwards, the first level where the
    counts differ decides: fewer edges at that level wins.
    """
    if a.levels != b.levels:
        raise ValueError("score vectors over different levels are not comparable")
    for x, y in zip(reversed(a.counts), reversed(b.counts)):
        if x != y:
            return x < y
    return False
