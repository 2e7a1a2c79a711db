"""Exact decision and optimisation at desk scale.

A single backtracking engine assigns agents vertex by vertex. With
``dedup=True`` it only visits one arrangement per orbit of a subgroup of the
seat-graph automorphisms, generated by

* permuting isomorphic path / cycle / star / clique / K1 / K2 components,
* rotating and reflecting cycles, reflecting paths,
* permuting the leaves of a star and the vertices of a clique.

Welfare, minimum utility, envy-freeness and exchange stability are all
invariant under automorphisms, so this is sound for every problem here.
Symmetry is broken by "agent at vertex v must exceed agent at vertex u"
constraints, which pick the lexicographically canonical representative.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from . import evaluate as ev
from .model import Arrangement, Instance, Utility, classify_seat_graph, require_valid

ENUMERATION_CAP = 10


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int | None = 5_000_000
    time_limit: float | None = None  # seconds


@dataclass(frozen=True)
class ExactResult:
    status: str  # found | none_exists | inconclusive
    witness: Arrangement | None = None
    objective: Fraction | None = None
    nodes_explored: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"


class _OutOfBudget(Exception):
    pass


# ---------------------------------------------------------------------------
# search plan: vertex order plus symmetry-breaking constraints


@dataclass(frozen=True)
class SearchPlan:
    order: tuple[int, ...]
    # above[v] = earlier vertices u whose agent index must be below v's
    above: tuple[tuple[int, ...], ...]


def _symmetry_constraints(comp) -> list[tuple[int, int]]:
    """(u, v) pairs meaning agent(u) < agent(v) inside one component."""
    o = comp.order
    k = len(o)
    if comp.kind in ("K2", "path"):
        return [(o[0], o[-1])]
    if comp.kind == "cycle":
        # smallest agent at the entry vertex, then fix the direction
        return [(o[0], o[i]) for i in range(1, k)] + [(o[1], o[-1])]
    if comp.kind == "star":
        return [(o[i], o[i + 1]) for i in range(1, k - 1)]
    if comp.kind == "clique":
        return [(o[i], o[i + 1]) for i in range(k - 1)]
    return []


def build_plan(inst: Instance, dedup: bool = True) -> SearchPlan:
    g = inst.seats
    comps = list(classify_seat_graph(g).components)
    # components with high degree first: their agents' utilities settle early
    comps.sort(key=lambda c: (-max(g.degree(v) for v in c.order), -c.size, c.kind, c.order[0]))
    order = [v for c in comps for v in c.order]
    above = [[] for _ in range(g.n)]
    if dedup:
        for c in comps:
            for u, v in _symmetry_constraints(c):
                above[v].append(u)
        last_of_kind = {}
        for c in comps:
            if c.kind == "other":
                continue
            key = (c.kind, c.size)
            if key in last_of_kind:
                above[c.order[0]].append(last_of_kind[key])
            last_of_kind[key] = c.order[0]
    return SearchPlan(tuple(order), tuple(tuple(a) for a in above))


def enumerate_arrangements(
    inst: Instance, dedup: bool = False, cap: int = ENUMERATION_CAP, override: bool = False
) -> Iterator[Arrangement]:
    """Yield every arrangement once, or one per symmetry orbit with ``dedup``."""
    n = inst.n
    if n > cap and not override:
        raise ValueError(f"{n} agents exceeds the enumeration cap of {cap}")
    if not dedup:
        for perm in itertools.permutations(range(n)):
            yield Arrangement(perm)
        return
    plan = build_plan(inst, dedup=True)
    agent_at = [-1] * n
    used = [False] * n

    def rec(k):
        if k == n:
            yield Arrangement.from_agent_at(agent_at)
            return
        v = plan.order[k]
        lo = max((agent_at[u] for u in plan.above[v]), default=-1)
        for a in range(lo + 1, n):
            if used[a]:
                continue
            used[a] = True
            agent_at[v] = a
            yield from rec(k + 1)
            used[a] = False
            agent_at[v] = -1

    yield from rec(0)


# ---------------------------------------------------------------------------
# the engine


class _Search:
    def __init__(self, inst: Instance, dedup: bool, budget: SearchBudget | None):
        require_valid(inst)
        self.inst = inst
        self.n = n = inst.n
        self.adj = inst.seats.adj
        self.rows = inst.valuations.scaled
        self.utility = inst.utility
        self.plan = build_plan(inst, dedup)
        self.budget = budget or SearchBudget()
        self.deadline = (
            time.monotonic() + self.budget.time_limit if self.budget.time_limit is not None else None
        )
        self.nodes = 0
        self.agent_at = [-1] * n
        self.seat_of = [-1] * n
        # each agent's partners, best first
        self.prefs = [
            sorted((q for q in range(n) if q != p), key=lambda q, r=self.rows[p]: (-r[q], q))
            for p in range(n)
        ]
        best = [self.rows[p][self.prefs[p][0]] if n > 1 else 0 for p in range(n)]
        self.agent_order = sorted(range(n), key=lambda p: (-best[p], p))
        self.max_degree = max((len(a) for a in self.adj), default=0)
        self.has_isolated = any(not a for a in self.adj)
        self.prune: Callable[[int], bool] = lambda v: False
        self.leaf: Callable[[], bool] = lambda: True

    # -- bounds on scaled utilities -------------------------------------

    def best_unplaced(self, p: int):
        for q in self.prefs[p]:
            if self.seat_of[q] == -1:
                return self.rows[p][q]
        return None

    def upper_bound(self, p: int) -> int:
        """Upper bound on p's final utility given the partial assignment."""
        nb = self.adj[self.seat_of[p]]
        if not nb:
            return 0
        row, at = self.rows[p], self.agent_at
        seated = [row[at[w]] for w in nb if at[w] != -1]
        k = len(nb) - len(seated)
        if k:
            m = self.best_unplaced(p)
            if self.utility is Utility.S:
                return sum(seated) + k * m
            seated.append(m)
        return ev._combine(self.utility, seated)

    def worst_unplaced(self, p: int):
        for q in reversed(self.prefs[p]):
            if self.seat_of[q] == -1:
                return self.rows[p][q]
        return None

    def lower_bound_at(self, p: int, w: int) -> int:
        """Lower bound on what seated p would get after swapping onto vertex w.

        Unseated neighbours of w (and w itself, if it is next to p) will hold
        unplaced agents, so p's worst valuation among those is a safe stand-in.
        """
        nb = self.adj[w]
        if not nb:
            return 0
        row, at = self.rows[p], self.agent_at
        home, q = self.seat_of[p], at[w]
        vals = []
        k = 0
        for x in nb:
            y = q if x == home else at[x]
            if y == -1:
                k += 1
            else:
                vals.append(row[y])
        if k:
            m = self.worst_unplaced(p)
            if self.utility is Utility.S:
                return sum(vals) + k * m
            vals.append(m)
        return ev._combine(self.utility, vals)

    def starved(self, traw: int) -> bool:
        """True if some unplaced agent cannot reach ``traw`` wherever it sits.

        Its future neighbours are unplaced agents or seated agents that still
        have a free neighbouring vertex, so its best valuation among those
        bounds its utility. Only meaningful for positive thresholds.
        """
        at, seat, adj = self.agent_at, self.seat_of, self.adj
        open_ = {
            at[v] for v in range(self.n) if at[v] != -1 and any(at[w] == -1 for w in adj[v])
        }
        for a in range(self.n):
            if seat[a] != -1:
                continue
            row = self.rows[a]
            for q in self.prefs[a]:
                if seat[q] == -1 or q in open_:
                    best = row[q]
                    break
            else:
                continue
            if self.utility is Utility.S:
                ub = self.max_degree * best if best > 0 else best
            else:
                ub = best
            if self.has_isolated:
                ub = max(ub, 0)
            if ub < traw:
                return True
        return False

    def complete(self, v: int) -> bool:
        at = self.agent_at
        return at[v] != -1 and all(at[w] != -1 for w in self.adj[v])

    def raw(self, p: int) -> int:
        nb = self.adj[self.seat_of[p]]
        if not nb:
            return 0
        row, at = self.rows[p], self.agent_at
        return ev._combine(self.utility, [row[at[w]] for w in nb])

    def raw_swapped(self, p: int, q: int) -> int:
        nb = self.adj[self.seat_of[q]]
        if not nb:
            return 0
        row, at = self.rows[p], self.agent_at
        return ev._combine(self.utility, [row[q] if at[w] == p else row[at[w]] for w in nb])

    def arrangement(self) -> Arrangement:
        return Arrangement(self.seat_of)

    # -- driver ---------------------------------------------------------

    def tick(self):
        self.nodes += 1
        b = self.budget
        if b.max_nodes is not None and self.nodes > b.max_nodes:
            raise _OutOfBudget
        if self.deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise _OutOfBudget

    def run(self) -> bool:
        """Depth-first search; True if ``leaf`` asked to stop. May raise _OutOfBudget."""
        order, above = self.plan.order, self.plan.above
        at, seat = self.agent_at, self.seat_of
        n = self.n

        def rec(k):
            if k == n:
                return self.leaf()
            v = order[k]
            lo = max((at[u] for u in above[v]), default=-1)
            for a in self.agent_order:
                if seat[a] != -1 or a <= lo:
                    continue
                self.tick()
                at[v] = a
                seat[a] = v
                if not self.prune(v) and rec(k + 1):
                    return True
                at[v] = -1
                seat[a] = -1
            return False

        return rec(0)


def _verify(cond: bool, what: str):
    if not cond:
        raise AssertionError(f"exact search produced a witness that fails {what}")


def _frac(inst, raw):
    return Fraction(raw, inst.valuations.scale)


# ---------------------------------------------------------------------------
# problems


def find_min_utility_at_least(
    inst: Instance, threshold, budget: SearchBudget | None = None, dedup: bool = True
) -> ExactResult:
    """Decide whether some arrangement gives every agent utility >= threshold."""
    s = _Search(inst, dedup, budget)
    t = Fraction(threshold)
    # scaled ints: u >= t  <=>  raw >= ceil(t * scale)
    tv = t * inst.valuations.scale
    traw = -((-tv.numerator) // tv.denominator)

    def prune(v):
        p = s.agent_at[v]
        if s.upper_bound(p) < traw:
            return True
        if any(s.agent_at[w] != -1 and s.upper_bound(s.agent_at[w]) < traw for w in s.adj[v]):
            return True
        return traw > 0 and s.starved(traw)

    s.prune = prune
    s.leaf = lambda: all(s.raw(p) >= traw for p in range(s.n))
    try:
        hit = s.run()
    except _OutOfBudget:
        return ExactResult("inconclusive", nodes_explored=s.nodes)
    if not hit:
        return ExactResult("none_exists", nodes_explored=s.nodes)
    w = s.arrangement()
    m = ev.min_utility(inst, w) if inst.n else Fraction(0)
    _verify(m >= t, "the utility threshold")
    return ExactResult("found", w, m, s.nodes)


def solve_mua_exact(inst: Instance, budget: SearchBudget | None = None, dedup: bool = True) -> ExactResult:
    """Maximise the minimum utility by branch and bound."""
    s = _Search(inst, dedup, budget)
    state = {"best": None, "witness": None}

    def prune(v):
        best = state["best"]
        if best is None:
            return False
        p = s.agent_at[v]
        if s.upper_bound(p) <= best:
            return True
        if any(s.agent_at[w] != -1 and s.upper_bound(s.agent_at[w]) <= best for w in s.adj[v]):
            return True
        return best >= 0 and s.starved(best + 1)

    def leaf():
        m = min(s.raw(p) for p in range(s.n))
        if state["best"] is None or m > state["best"]:
            state["best"], state["witness"] = m, s.arrangement()
        return False

    s.prune, s.leaf = prune, leaf
    return _optimum(inst, s, state, ev.min_utility)


def solve_mwa_exact(inst: Instance, budget: SearchBudget | None = None, dedup: bool = True) -> ExactResult:
    """Maximise total welfare by branch and bound."""
    s = _Search(inst, dedup, budget)
    degrees = {len(a) for a in inst.seats.adj}
    any_bound = []
    for p in range(inst.n):
        top = s.rows[p][s.prefs[p][0]] if inst.n > 1 else 0
        if inst.utility is Utility.S:
            any_bound.append(max(d * top for d in degrees))
        else:
            any_bound.append(max(top if d else 0 for d in degrees))
    state = {"best": None, "witness": None}

    def prune(v):
        best = state["best"]
        if best is None:
            return False
        total = 0
        for p in range(s.n):
            total += s.upper_bound(p) if s.seat_of[p] != -1 else any_bound[p]
        return total <= best

    def leaf():
        w = sum(s.raw(p) for p in range(s.n))
        if state["best"] is None or w > state["best"]:
            state["best"], state["witness"] = w, s.arrangement()
        return False

    s.prune, s.leaf = prune, leaf
    return _optimum(inst, s, state, ev.welfare)


def _optimum(inst, s, state, objective_fn) -> ExactResult:
    try:
        s.run()
    except _OutOfBudget:
        w = state["witness"]
        obj = _frac(inst, state["best"]) if w is not None else None
        return ExactResult("inconclusive", w, obj, s.nodes)
    if state["witness"] is None:
        # only possible for n == 0
        return ExactResult("none_exists", nodes_explored=s.nodes)
    w = state["witness"]
    obj = _frac(inst, state["best"])
    _verify(objective_fn(inst, w) == obj, "its reported objective")
    return ExactResult("found", w, obj, s.nodes)


def _pairwise_search(inst, budget, dedup, mutual: bool) -> ExactResult:
    s = _Search(inst, dedup, budget)
    # vertices whose closed neighbourhood is fully seated, in completion order
    done: list[int] = []

    def conflict(p, q):
        ep = s.raw_swapped(p, q) > s.raw(p)
        eq = s.raw_swapped(q, p) > s.raw(q)
        return (ep and eq) if mutual else (ep or eq)

    def bound_conflict(v):
        ubs = {}

        def doomed(p, w):
            # p ends up envying whoever sits at w, whatever the completion
            u = ubs.get(p)
            if u is None:
                u = ubs[p] = s.upper_bound(p)
            return s.lower_bound_at(p, w) > u

        def pair_doomed(p, w):
            if not doomed(p, w):
                return False
            if not mutual:
                return True
            q = s.agent_at[w]
            return q != -1 and doomed(q, s.seat_of[p])

        near = (v,) + s.adj[v]
        for x in near:
            p = s.agent_at[x]
            if p == -1:
                continue
            for w in range(n):
                if w != x and pair_doomed(p, w):
                    return True
        for p in range(n):
            x = s.seat_of[p]
            if x == -1 or x in near:
                continue
            for w in near:
                if pair_doomed(p, w):
                    return True
        return False

    def crowded():
        """Agents someone would envy being next to need vertices where that cannot happen.

        If seated p prefers unplaced f to anything p can still reach, f must
        end on a vertex y such that p gains nothing by moving beside it. When
        there are not enough such vertices for all those agents, prune.
        """
        at, seat, adj, rows = s.agent_at, s.seat_of, s.adj, s.rows
        ubs = {}
        wanted: dict[int, list[int]] = {}
        for p in range(n):
            if seat[p] == -1:
                continue
            u = s.upper_bound(p)
            row = rows[p]
            for f in s.prefs[p]:
                if row[f] <= u:
                    break
                if seat[f] == -1:
                    wanted.setdefault(f, []).append(p)
                    ubs[p] = u
        if not wanted:
            return False
        util = s.utility
        pick = max if util is Utility.B else min
        # per seated p: vertices x next to some free vertex, with what p would
        # already get there and how many other free neighbours remain
        reach = {}
        for p in ubs:
            row, home = rows[p], seat[p]
            worst = s.worst_unplaced(p)
            entries = []
            for x in range(n):
                if x == home:
                    continue
                known = []
                k = 0
                for z in adj[x]:
                    a = at[x] if z == home else at[z]
                    if a == -1:
                        k += 1
                    else:
                        known.append(row[a])
                if not k:
                    continue
                if util is Utility.S:
                    base = sum(known) + (k - 1) * worst
                else:
                    if k > 1:
                        known.append(worst)
                    base = pick(known) if known else None
                entries.append((x, base))
            reach[p] = entries

        free = [y for y in range(n) if at[y] == -1]
        safe = {}
        for f, ps in wanted.items():
            bad = set()
            for p in ps:
                v, u = rows[p][f], ubs[p]
                for x, base in reach[p]:
                    if util is Utility.S:
                        g = base + v
                    else:
                        g = v if base is None else pick(base, v)
                    if g > u:
                        bad.update(adj[x])
            safe[f] = [y for y in free if y not in bad]
            if not safe[f]:
                return True
        match: dict[int, int] = {}

        def augment(f, seen):
            for y in safe[f]:
                if y in seen:
                    continue
                seen.add(y)
                if y not in match or augment(match[y], seen):
                    match[y] = f
                    return True
            return False

        return not all(augment(f, set()) for f in wanted)

    def prune(v):
        if (crowded() if not mutual else bound_conflict(v)):
            return True
        # only v and its neighbours can have become complete
        for x in (v,) + s.adj[v]:
            if not s.complete(x):
                continue
            p = s.agent_at[x]
            if any(conflict(p, s.agent_at[y]) for y in done):
                return True
            done.append(x)
        return False

    order, above = s.plan.order, s.plan.above
    at, seat = s.agent_at, s.seat_of
    n = s.n

    def rec(k):
        if k == n:
            return True
        v = order[k]
        lo = max((at[u] for u in above[v]), default=-1)
        for a in s.agent_order:
            if seat[a] != -1 or a <= lo:
                continue
            s.tick()
            at[v] = a
            seat[a] = v
            mark = len(done)
            if not prune(v) and rec(k + 1):
                return True
            del done[mark:]
            at[v] = -1
            seat[a] = -1
        return False

    try:
        hit = rec(0)
    except _OutOfBudget:
        return ExactResult("inconclusive", nodes_explored=s.nodes)
    if not hit:
        return ExactResult("none_exists", nodes_explored=s.nodes)
    w = s.arrangement()
    if mutual:
        _verify(ev.is_exchange_stable(inst, w), "exchange stability")
    else:
        _verify(ev.is_envy_free(inst, w), "envy-freeness")
    return ExactResult("found", w, None, s.nodes)


def find_envy_free_exact(inst: Instance, budget: SearchBudget | None = None, dedup: bool = True) -> ExactResult:
    return _pairwise_search(inst, budget, dedup, mutual=False)


def find_exchange_stable_exact(
    inst: Instance, budget: SearchBudget | None = None, dedup: bool = True
) -> ExactResult:
    return _pairwise_search(inst, budget, dedup, mutual=True)
