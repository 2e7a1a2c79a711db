"""Core data model: valuations, seat graphs, arrangements and class detection.

All numbers are :class:`fractions.Fraction`. A valuation matrix also keeps an
integer copy scaled by the common denominator so that hot loops (envy tests,
search) compare plain ints without losing exactness.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence


class Utility(str, Enum):
    B = "B"  # best neighbour
    S = "S"  # sum over neighbours
    W = "W"  # worst neighbour


class InvalidInstanceError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # floats are only accepted when they are exactly representable ints
        if not x.is_integer():
            raise TypeError(f"refusing inexact float {x!r}; pass a Fraction or str")
        return Fraction(int(x))
    return Fraction(x)


# ---------------------------------------------------------------------------
# valuations


class ValuationMatrix:
    """Dense n x n matrix of exact valuations ``value(p, q)`` for p != q.

    Off-diagonal entries may be ``None`` only so that :func:`validate_instance`
    can report them; every solver requires a complete matrix.
    """

    __slots__ = ("n", "rows", "scale", "scaled")

    def __init__(self, rows: Sequence[Sequence]):
        n = len(rows)
        clean = []
        for p, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {p} has length {len(row)}, expected {n}")
            clean.append(
                tuple(
                    None if (q == p or row[q] is None) else as_fraction(row[q])
                    for q in range(n)
                )
            )
        self.n = n
        self.rows: tuple[tuple[Fraction | None, ...], ...] = tuple(clean)
        dens = [v.denominator for row in self.rows for v in row if v is not None]
        self.scale = math.lcm(*dens) if dens else 1
        self.scaled: tuple[tuple[int, ...], ...] = tuple(
            tuple(
                0 if v is None else v.numerator * (self.scale // v.denominator)
                for v in row
            )
            for row in self.rows
        )

    @classmethod
    def from_function(cls, n: int, f) -> "ValuationMatrix":
        return cls([[None if p == q else f(p, q) for q in range(n)] for p in range(n)])

    @classmethod
    def symmetric_from_pairs(cls, n: int, scores: dict, default=0) -> "ValuationMatrix":
        """Build a symmetric matrix from ``{(p, q): score}`` over unordered pairs."""
        rows = [[None if p == q else as_fraction(default) for q in range(n)] for p in range(n)]
        for (p, q), s in scores.items():
            if p == q:
                raise ValueError("an agent has no valuation for itself")
            rows[p][q] = rows[q][p] = as_fraction(s)
        return cls(rows)

    def value(self, p: int, q: int) -> Fraction:
        if p == q:
            raise ValueError(f"valuation of agent {p} for itself is undefined")
        v = self.rows[p][q]
        if v is None:
            raise InvalidInstanceError(f"missing valuation f_{p}({q})")
        return v

    def missing(self) -> list[tuple[int, int]]:
        return [
            (p, q)
            for p in range(self.n)
            for q in range(self.n)
            if p != q and self.rows[p][q] is None
        ]

    def distinct_values(self) -> list[Fraction]:
        return sorted({v for row in self.rows for v in row if v is not None})

    def __eq__(self, other):
        return isinstance(other, ValuationMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"ValuationMatrix(n={self.n})"


# ---------------------------------------------------------------------------
# seat graphs


class SeatGraph:
    """Simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        adj = [[] for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"parallel edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def __eq__(self, other):
        return isinstance(other, SeatGraph) and (self.n, self.edges) == (other.n, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"SeatGraph(n={self.n}, m={len(self.edges)})"

    # convenience constructors; each returns a graph whose vertices are laid
    # out component by component in walking order

    @classmethod
    def disjoint_union(cls, parts: Iterable["SeatGraph"]) -> "SeatGraph":
        edges, off = [], 0
        for g in parts:
            edges.extend((u + off, v + off) for u, v in g.edges)
            off += g.n
        return cls(off, edges)

    @classmethod
    def path(cls, k: int) -> "SeatGraph":
        return cls(k, [(i, i + 1) for i in range(k - 1)])

    @classmethod
    def cycle(cls, k: int) -> "SeatGraph":
        if k < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls(k, [(i, (i + 1) % k) for i in range(k)])

    @classmethod
    def star(cls, leaves: int) -> "SeatGraph":
        return cls(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def clique(cls, k: int) -> "SeatGraph":
        return cls(k, [(i, j) for i in range(k) for j in range(i + 1, k)])

    @classmethod
    def matching(cls, pairs: int) -> "SeatGraph":
        return cls(2 * pairs, [(2 * i, 2 * i + 1) for i in range(pairs)])

    @classmethod
    def empty(cls, k: int) -> "SeatGraph":
        return cls(k, [])


@dataclass(frozen=True)
class Component:
    kind: str  # K1, K2, path, cycle, star, clique, other
    order: tuple[int, ...]  # canonical vertex order (walk order for paths/cycles, centre first for stars)

    @property
    def size(self) -> int:
        return len(self.order)

    @property
    def is_path(self) -> bool:
        return self.kind in ("K1", "K2", "path")

    @property
    def is_cycle(self) -> bool:
        return self.kind == "cycle"

    @property
    def is_clique(self) -> bool:
        return self.kind in ("K1", "K2", "clique") or (self.kind == "cycle" and self.size == 3)


@dataclass(frozen=True)
class GraphClass:
    is_matching: bool
    is_path_graph: bool
    is_cycle_graph: bool
    is_cluster_graph: bool
    max_degree: int
    components: tuple[Component, ...]

    def summary(self) -> list[tuple[str, int]]:
        return [(c.kind, c.size) for c in self.components]


def _walk(adj, start, first=None):
    order, prev, cur = [start], None, start
    nxt = first
    while True:
        if nxt is None:
            cands = [w for w in adj[cur] if w != prev]
            if not cands:
                break
            nxt = cands[0]
        if nxt == start:
            break
        order.append(nxt)
        prev, cur, nxt = cur, nxt, None
    return order


def _component(g: SeatGraph, verts: list[int]) -> Component:
    adj = g.adj
    k = len(verts)
    if k == 1:
        return Component("K1", (verts[0],))
    if k == 2:
        return Component("K2", tuple(sorted(verts)))
    degs = {v: len(adj[v]) for v in verts}
    m = sum(degs.values()) // 2
    if all(d == 2 for d in degs.values()):
        start = min(verts)
        return Component("cycle", tuple(_walk(adj, start, first=adj[start][0])))
    if m == k - 1 and max(degs.values()) <= 2:
        ends = sorted(v for v in verts if degs[v] == 1)
        return Component("path", tuple(_walk(adj, ends[0])))
    if m == k - 1:
        centre = max(verts, key=lambda v: (degs[v], -v))
        if degs[centre] == k - 1:
            return Component("star", (centre,) + tuple(sorted(v for v in verts if v != centre)))
    if m == k * (k - 1) // 2:
        return Component("clique", tuple(sorted(verts)))
    # BFS from the highest-degree vertex: neighbourhoods complete early in search
    root = max(verts, key=lambda v: (degs[v], -v))
    seen, order, dq = {root}, [], deque([root])
    while dq:
        v = dq.popleft()
        order.append(v)
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                dq.append(w)
    return Component("other", tuple(order))


def connected_components(g: SeatGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def classify_seat_graph(g: SeatGraph) -> GraphClass:
    comps = tuple(_component(g, c) for c in connected_components(g))
    return GraphClass(
        is_matching=bool(comps) and all(c.kind == "K2" for c in comps),
        is_path_graph=all(c.is_path for c in comps),
        is_cycle_graph=bool(comps) and all(c.is_cycle for c in comps),
        is_cluster_graph=all(c.is_clique for c in comps),
        max_degree=max((len(a) for a in g.adj), default=0),
        components=comps,
    )


# ---------------------------------------------------------------------------
# 1-D positions


@dataclass(frozen=True)
class Positions:
    values: tuple[Fraction, ...]

    def __init__(self, values: Iterable):
        object.__setattr__(self, "values", tuple(as_fraction(v) for v in values))

    def __len__(self):
        return len(self.values)

    @property
    def span(self) -> Fraction:
        if not self.values:
            return Fraction(0)
        return max(self.values) - min(self.values)

    @property
    def unique(self) -> bool:
        return len(set(self.values)) == len(self.values)


def valuations_from_positions(pos: Positions) -> ValuationMatrix:
    """``value(p, q) = D - |l_p - l_q| + 1`` with D the span of all positions."""
    if len(pos) < 2:
        raise ValueError("1-D preferences need at least two agents")
    D = pos.span
    l = pos.values
    return ValuationMatrix.from_function(len(l), lambda p, q: D - abs(l[p] - l[q]) + 1)


# ---------------------------------------------------------------------------
# instances


@dataclass(frozen=True, eq=False)
class Instance:
    agents: tuple[str, ...]
    valuations: ValuationMatrix
    seats: SeatGraph
    utility: Utility
    positions: Positions | None = None

    def __post_init__(self):
        object.__setattr__(self, "agents", tuple(self.agents))
        object.__setattr__(self, "utility", Utility(self.utility))

    @property
    def n(self) -> int:
        return len(self.agents)

    def value(self, p: int, q: int) -> Fraction:
        return self.valuations.value(p, q)

    def with_utility(self, utility) -> "Instance":
        return Instance(self.agents, self.valuations, self.seats, Utility(utility), self.positions)

    def __eq__(self, other):
        return isinstance(other, Instance) and (
            self.agents, self.valuations, self.seats, self.utility, self.positions
        ) == (other.agents, other.valuations, other.seats, other.utility, other.positions)

    def __hash__(self):
        return hash((self.agents, self.valuations, self.seats, self.utility))

    @classmethod
    def build(cls, valuations, seats: SeatGraph, utility="S", agents=None, positions=None) -> "Instance":
        """Convenience constructor: accepts a nested list or a ValuationMatrix."""
        if not isinstance(valuations, ValuationMatrix):
            valuations = ValuationMatrix(valuations)
        if agents is None:
            agents = [f"a{i}" for i in range(valuations.n)]
        if positions is not None and not isinstance(positions, Positions):
            positions = Positions(positions)
        return cls(tuple(agents), valuations, seats, Utility(utility), positions)

    @classmethod
    def one_dimensional(cls, positions, seats: SeatGraph, utility="S", agents=None) -> "Instance":
        pos = positions if isinstance(positions, Positions) else Positions(positions)
        return cls.build(valuations_from_positions(pos), seats, utility, agents, pos)


def validate_instance(inst: Instance) -> list[str]:
    """Return every well-formedness violation; an empty list means valid."""
    problems = []
    n = inst.n
    if inst.valuations.n != n:
        problems.append(f"valuation matrix is {inst.valuations.n}x{inst.valuations.n} for {n} agents")
    if inst.seats.n != n:
        problems.append(f"agent/vertex count mismatch: {n} agents, {inst.seats.n} vertices")
    missing = inst.valuations.missing()
    if missing:
        problems.append(f"missing valuations for {len(missing)} ordered pairs, e.g. {missing[0]}")
    if len(set(inst.agents)) != n:
        problems.append("agent names are not unique")
    if inst.positions is not None:
        pos = inst.positions
        if len(pos) != n:
            problems.append(f"{len(pos)} positions for {n} agents")
        elif n < 2:
            problems.append("1-D positions need at least two agents")
        elif inst.valuations.n == n:
            D = pos.span
            for p in range(n):
                for q in range(n):
                    if p == q:
                        continue
                    want = D - abs(pos.values[p] - pos.values[q]) + 1
                    got = inst.valuations.rows[p][q]
                    if got is not None and got != want:
                        problems.append(
                            f"positions/valuation inconsistency: f_{p}({q}) = {got}, positions give {want}"
                        )
    return problems


def require_valid(inst: Instance) -> None:
    problems = validate_instance(inst)
    if problems:
        raise InvalidInstanceError("; ".join(problems))


@dataclass(frozen=True)
class PreferenceClass:
    nonnegative: bool
    positive: bool
    binary: bool
    symmetric: bool
    strict: bool
    one_dimensional: bool
    unique_positions: bool = False

    def names(self) -> list[str]:
        return [k for k, v in self.__dict__.items() if v is True]


def is_symmetric(vals: ValuationMatrix) -> bool:
    rows = vals.rows
    return all(rows[p][q] == rows[q][p] for p in range(vals.n) for q in range(p + 1, vals.n))


def classify_preferences(inst: Instance) -> PreferenceClass:
    vals = inst.valuations
    entries = [v for row in vals.rows for v in row if v is not None]
    strict = all(
        len({v for v in row if v is not None}) == sum(v is not None for v in row)
        for row in vals.rows
    )
    one_d = inst.positions is not None and not validate_instance(inst)
    return PreferenceClass(
        nonnegative=all(v >= 0 for v in entries),
        positive=all(v > 0 for v in entries),
        binary=all(v in (0, 1) for v in entries),
        symmetric=is_symmetric(vals),
        strict=strict,
        one_dimensional=one_d,
        unique_positions=one_d and inst.positions.unique,
    )


# ---------------------------------------------------------------------------
# arrangements


@dataclass(frozen=True)
class Arrangement:
    """Bijection agent -> vertex. ``seat_of[p]`` is p's vertex."""

    seat_of: tuple[int, ...]
    agent_at: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, seat_of: Iterable[int]):
        seat_of = tuple(int(v) for v in seat_of)
        n = len(seat_of)
        agent_at = [-1] * n
        for p, v in enumerate(seat_of):
            if not 0 <= v < n or agent_at[v] != -1:
                raise ValueError(f"not a bijection: agent {p} -> vertex {v}")
            agent_at[v] = p
        object.__setattr__(self, "seat_of", seat_of)
        object.__setattr__(self, "agent_at", tuple(agent_at))

    @classmethod
    def from_agent_at(cls, agent_at: Sequence[int]) -> "Arrangement":
        seat_of = [0] * len(agent_at)
        for v, p in enumerate(agent_at):
            seat_of[p] = v
        return cls(seat_of)

    @classmethod
    def identity(cls, n: int) -> "Arrangement":
        return cls(range(n))

    def __len__(self):
        return len(self.seat_of)

    def swap(self, p: int, q: int) -> "Arrangement":
        return swap(self, p, q)


def swap(arr: Arrangement, p: int, q: int) -> Arrangement:
    if p == q:
        raise ValueError("cannot swap an agent with itself")
    seats = list(arr.seat_of)
    seats[p], seats[q] = seats[q], seats[p]
    return Arrangement(seats)
