"""Instance generators: hardness-reduction families and random instances.

Every reduction keeps its source (a Partition Into Triangles graph or a Bin
Packing instance) next to the generated seat-arrangement instance, together
with a role label and an anchor (source vertex or item) for every agent, so
that forward-direction arrangements can be built and witnesses decoded.

Families
--------
``pit-b``         binary symmetric, cycles and stars, B-utility
``pit-s-strict``  the same, perturbed to strict, S-utility
``pit-w-binary``  binary symmetric, 2- and 3-cycles, W-utility
``pit-w-strict``  strict symmetric, 3- and 17-cycles, W-utility
``binpack-1d``    1-D strict positions, equal-length paths, B-utility
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .model import (
    Arrangement,
    Instance,
    InvalidInstanceError,
    Positions,
    SeatGraph,
    Utility,
    ValuationMatrix,
    as_fraction,
    is_symmetric,
    valuations_from_positions,
)

PIT_BRUTEFORCE_LIMIT = 12
BINPACK_BRUTEFORCE_LIMIT = 10


# ---------------------------------------------------------------------------
# source problems


@dataclass(frozen=True)
class PitInstance:
    """A Partition Into Triangles instance on vertices ``0 .. n_vertices-1``."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n_vertices: int, edges):
        g = SeatGraph(n_vertices, edges)  # reuse the simple-graph checks
        object.__setattr__(self, "n_vertices", n_vertices)
        object.__setattr__(self, "edges", g.edges)

    @property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        return SeatGraph(self.n_vertices, self.edges).adj

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in set(self.edges)

    def triangles(self) -> list[tuple[int, int, int]]:
        es = set(self.edges)
        adj = self.adj
        out = []
        for i in range(self.n_vertices):
            for j, k in itertools.combinations([x for x in adj[i] if x > i], 2):
                if (j, k) in es:
                    out.append((i, j, k))
        return out

    def check(self, min_degree: int = 2, max_degree: int | None = 4, min_triples: int = 1):
        n = self.n_vertices
        if n % 3 or n < 3 * min_triples:
            raise InvalidInstanceError(f"PIT needs 3n vertices with n >= {min_triples}, got {n}")
        if self.min_degree < min_degree:
            raise InvalidInstanceError(f"PIT vertices need degree >= {min_degree}")
        if max_degree is not None and self.max_degree > max_degree:
            raise InvalidInstanceError(f"PIT vertices need degree <= {max_degree}")


TrianglePartition = list[tuple[int, int, int]]


def check_triangle_partition(pit: PitInstance, part) -> None:
    seen = []
    for tri in part:
        if len(tri) != 3:
            raise ValueError(f"{tri} is not a triple")
        a, b, c = tri
        if not (pit.adjacent(a, b) and pit.adjacent(a, c) and pit.adjacent(b, c)):
            raise ValueError(f"{tri} is not a triangle")
        seen.extend(tri)
    if sorted(seen) != list(range(pit.n_vertices)):
        raise ValueError("triangles do not partition the vertex set")


def solve_pit_bruteforce(pit: PitInstance) -> TrianglePartition | None:
    """Exhaustive search for a triangle partition (smallest uncovered vertex first)."""
    n = pit.n_vertices
    if n > PIT_BRUTEFORCE_LIMIT:
        raise ValueError(f"brute force limited to {PIT_BRUTEFORCE_LIMIT} vertices")
    if n % 3:
        return None
    by_vertex = {v: [] for v in range(n)}
    for t in pit.triangles():
        by_vertex[t[0]].append(t)
    covered = [False] * n
    chosen: list[tuple[int, int, int]] = []

    def rec():
        try:
            v = covered.index(False)
        except ValueError:
            return True
        for t in by_vertex[v]:
            if covered[t[1]] or covered[t[2]]:
                continue
            for x in t:
                covered[x] = True
            chosen.append(t)
            if rec():
                return True
            chosen.pop()
            for x in t:
                covered[x] = False
        return False

    return list(chosen) if rec() else None


@dataclass(frozen=True)
class BinPackingInstance:
    sizes: tuple[int, ...]
    capacity: int
    bins: int

    def __init__(self, sizes, capacity: int, bins: int):
        sizes = tuple(int(s) for s in sizes)
        if any(s <= 0 for s in sizes) or capacity <= 0 or bins <= 0:
            raise InvalidInstanceError("sizes, capacity and bin count must be positive")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "capacity", int(capacity))
        object.__setattr__(self, "bins", int(bins))

    def preprocess(self) -> "BinPackingInstance":
        """Pad with unit items up to total C*K, then double every size and C.

        Afterwards every size is at least 2 and the sizes sum to C*K exactly.
        Feasibility is unchanged.
        """
        total = sum(self.sizes)
        slack = self.capacity * self.bins - total
        if slack < 0:
            raise InvalidInstanceError("items exceed the total bin capacity")
        sizes = [2 * s for s in self.sizes] + [2] * slack
        return BinPackingInstance(sizes, 2 * self.capacity, self.bins)

    def check_packing(self, packing) -> None:
        if len(packing) != len(self.sizes):
            raise ValueError("packing must give a bin for every item")
        load = [0] * self.bins
        for item, b in enumerate(packing):
            if not 0 <= b < self.bins:
                raise ValueError(f"bin {b} out of range")
            load[b] += self.sizes[item]
        if max(load) > self.capacity:
            raise ValueError("bin capacity exceeded")


Packing = tuple[int, ...]  # bin index per item


def solve_binpacking_bruteforce(bp: BinPackingInstance) -> Packing | None:
    """Try every item-to-bin map (largest items first, equal-load bins deduplicated)."""
    m = len(bp.sizes)
    if m > BINPACK_BRUTEFORCE_LIMIT:
        raise ValueError(f"brute force limited to {BINPACK_BRUTEFORCE_LIMIT} items")
    order = sorted(range(m), key=lambda i: -bp.sizes[i])
    load = [0] * bp.bins
    packing = [-1] * m

    def rec(k):
        if k == m:
            return True
        item = order[k]
        tried = set()
        for b in range(bp.bins):
            if load[b] in tried or load[b] + bp.sizes[item] > bp.capacity:
                continue
            tried.add(load[b])
            load[b] += bp.sizes[item]
            packing[item] = b
            if rec(k + 1):
                return True
            load[b] -= bp.sizes[item]
        packing[item] = -1
        return False

    return tuple(packing) if rec(0) else None


# ---------------------------------------------------------------------------
# generated instances and perturbation


@dataclass(frozen=True)
class GeneratedInstance:
    instance: Instance
    source: PitInstance | BinPackingInstance
    family: str
    roles: tuple[str, ...]  # one label per agent
    anchors: tuple[int | None, ...]  # source vertex / item per agent
    layout: dict = field(default_factory=dict, compare=False)

    def agents_with_role(self, role: str) -> list[int]:
        return [a for a, r in enumerate(self.roles) if r == role]


@dataclass(frozen=True)
class PerturbationSpec:
    """Add ``i * delta`` to the i-th unordered pair (1-based, lexicographic)."""

    delta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "delta", as_fraction(self.delta))
        if self.delta <= 0:
            raise ValueError("delta must be positive")

    @staticmethod
    def min_gap(vals: ValuationMatrix) -> Fraction:
        levels = sorted(set(vals.distinct_values()))
        gaps = [b - a for a, b in zip(levels, levels[1:])]
        return min(gaps, default=Fraction(1))

    @classmethod
    def for_instance(cls, inst: Instance) -> "PerturbationSpec":
        pairs = max(1, inst.n * (inst.n - 1) // 2)
        return cls(cls.min_gap(inst.valuations) / (4 * pairs))

    def epsilon(self, i: int, j: int, n: int) -> Fraction:
        """Offset of unordered pair {i, j}."""
        i, j = min(i, j), max(i, j)
        rank = i * n - i * (i + 1) // 2 + (j - i)  # 1-based lexicographic rank
        return rank * self.delta


def perturb_strict(inst: Instance, spec: PerturbationSpec | None = None) -> Instance:
    """Make a symmetric instance strict while keeping every strict comparison.

    Positions are dropped: the result is no longer 1-dimensional.
    """
    if not is_symmetric(inst.valuations):
        raise ValueError("perturbation needs symmetric preferences")
    spec = spec or PerturbationSpec.for_instance(inst)
    n = inst.n
    pairs = n * (n - 1) // 2
    if spec.delta * pairs * 2 >= PerturbationSpec.min_gap(inst.valuations):
        raise ValueError("delta too large: perturbation could reorder distinct valuations")
    rows = inst.valuations.rows
    new = [[None if p == q else rows[p][q] + spec.epsilon(p, q, n) for q in range(n)] for p in range(n)]
    return Instance(inst.agents, ValuationMatrix(new), inst.seats, inst.utility, None)


# ---------------------------------------------------------------------------
# PIT -> B-utility, cycles and stars


def _pit_b_layout(pit: PitInstance):
    V = pit.n_vertices
    adj = pit.adj
    names, roles, anchors = [], [], []

    def add(name, role, anchor):
        names.append(name)
        roles.append(role)
        anchors.append(anchor)
        return len(names) - 1

    p = [add(f"p{i}", "p", i) for i in range(V)]
    q = {}  # (i, j, k) -> agent, j < k neighbours of i
    r = {}
    for i in range(V):
        for j, k in itertools.combinations(adj[i], 2):
            q[i, j, k] = add(f"q{i}^{j},{k}", "q", i)
    for i in range(V):
        nq = sum(1 for key in q if key[0] == i)
        r[i] = [add(f"r{i}^{l}", "r", i) for l in range(1, 2 * nq + 3)]
    return names, roles, anchors, p, q, r


def gen_pit_to_efa_b(pit: PitInstance) -> GeneratedInstance:
    pit.check(min_degree=2, max_degree=4)
    V = pit.n_vertices
    names, roles, anchors, p, q, r = _pit_b_layout(pit)
    N = len(names)
    scores = {}
    for (i, j, k), a in q.items():
        scores[p[i], a] = 1
        if pit.adjacent(j, k):
            scores[a, q[tuple([j] + sorted((i, k)))]] = 1
            scores[a, q[tuple([k] + sorted((i, j)))]] = 1
    for i in range(V):
        for a in r[i]:
            scores[p[i], a] = 1
    vals = ValuationMatrix.symmetric_from_pairs(N, scores)

    parts, triangles, stars = [], [], []
    base = 0
    for _ in range(V // 3):
        parts.append(SeatGraph.cycle(3))
        triangles.append(tuple(range(base, base + 3)))
        base += 3
    for i in range(V):
        leaves = sum(1 for key in q if key[0] == i) + len(r[i]) - 1
        parts.append(SeatGraph.star(leaves))
        stars.append((base, tuple(range(base + 1, base + 1 + leaves))))
        base += leaves + 1
    seats = SeatGraph.disjoint_union(parts)
    inst = Instance(tuple(names), vals, seats, Utility.B)
    layout = {"p": p, "q": q, "r": r, "triangles": triangles, "stars": stars}
    return GeneratedInstance(inst, pit, "pit-b", tuple(roles), tuple(anchors), layout)


def gen_pit_to_efa_s_strict(pit: PitInstance, spec: PerturbationSpec | None = None) -> GeneratedInstance:
    """The B-family instance with S-utility and pairwise-distinct perturbations."""
    gi = gen_pit_to_efa_b(pit)
    inst = perturb_strict(gi.instance.with_utility(Utility.S), spec)
    return GeneratedInstance(inst, pit, "pit-s-strict", gi.roles, gi.anchors, gi.layout)


# ---------------------------------------------------------------------------
# PIT -> W-utility, binary, 2- and 3-cycles


def gen_pit_to_efa_w_binary(pit: PitInstance) -> GeneratedInstance:
    pit.check(min_degree=2, max_degree=None)
    V = pit.n_vertices
    names = [f"p{i}" for i in range(V)] + [f"p{i}^1" for i in range(V)] + [f"p{i}^2" for i in range(V)]
    roles = ["p"] * V + ["p1"] * V + ["p2"] * V
    anchors = list(range(V)) * 3
    p = list(range(V))
    p1 = [V + i for i in range(V)]
    p2 = [2 * V + i for i in range(V)]
    scores = {(p[u], p[v]): 1 for u, v in pit.edges}
    for i in range(V):
        scores[p[i], p1[i]] = 1
        scores[p1[i], p2[i]] = 1
        scores[p2[i], p1[(i + 1) % V]] = 1
    vals = ValuationMatrix.symmetric_from_pairs(3 * V, scores)
    seats = SeatGraph.disjoint_union([SeatGraph.cycle(3)] * (V // 3) + [SeatGraph.path(2)] * V)
    triangles = [tuple(range(3 * t, 3 * t + 3)) for t in range(V // 3)]
    pairs = [(V + 2 * i, V + 2 * i + 1) for i in range(V)]
    inst = Instance(tuple(names), vals, seats, Utility.W)
    layout = {"p": p, "p1": p1, "p2": p2, "triangles": triangles, "pairs": pairs}
    return GeneratedInstance(inst, pit, "pit-w-binary", tuple(roles), tuple(anchors), layout)


# ---------------------------------------------------------------------------
# PIT -> W-utility, strict, 3- and 17-cycles

_GROUP = 18


def gen_pit_to_efa_w_strict(
    pit: PitInstance, spec: PerturbationSpec | None = None, perturb: bool = True
) -> GeneratedInstance:
    """Each vertex gets a group of 18 agents laid out in a fixed cyclic order.

    The group holds three agents per triangle through the vertex (the first
    of which may leave for a 3-cycle) and padding agents. Consecutive group
    members value each other 2; the second agent of each triple values 1.5
    the member that precedes it once the triple's first agent is gone.
    """
    pit.check(min_degree=2, max_degree=4)
    V = pit.n_vertices
    names, roles, anchors = [], [], []
    groups: list[list[int]] = []
    first = {}  # (i, j, k) -> agent p_{i,1}^{j,k}
    seconds: list[list[int]] = []
    for i in range(V):
        group, sec = [], []
        for j, k in itertools.combinations(pit.adj[i], 2):
            if not pit.adjacent(j, k):
                continue
            for rr in (1, 2, 3):
                names.append(f"p{i},{rr}^{j},{k}")
                roles.append(f"p{rr}")
                anchors.append(i)
                group.append(len(names) - 1)
            first[i, j, k] = group[-3]
            sec.append(group[-2])
        for l in range(1, _GROUP - len(group) + 1):
            names.append(f"q{i}^{l}")
            roles.append("q")
            anchors.append(i)
            group.append(len(names) - 1)
        groups.append(group)
        seconds.append(sec)
    s_agents = []
    t_agents = []
    for x in (1, 2, 3):
        names.append(f"s{x}")
        roles.append("s")
        anchors.append(None)
        s_agents.append(len(names) - 1)
    for x in (1, 2, 3):
        names.append(f"t{x}")
        roles.append("t")
        anchors.append(None)
        t_agents.append(len(names) - 1)
    N = len(names)

    scores: dict = {}
    for (i, j, k), a in first.items():
        scores[a, first[(j,) + tuple(sorted((i, k)))]] = 3
        scores[a, first[(k,) + tuple(sorted((i, j)))]] = 3
    for i, group in enumerate(groups):
        for x in range(_GROUP):
            scores[group[x - 1], group[x]] = 2
        firsts = {first[key] for key in first if key[0] == i}
        rest = [a for a in group if a not in firsts]
        for b in seconds[i]:
            idx = rest.index(b)
            scores[rest[idx - 1], b] = Fraction(3, 2)
    for a in range(N):
        for s in s_agents:
            if a != s:
                scores[a, s] = 3 if a in s_agents else 2 if a in t_agents else 1
        for t in t_agents:
            if a != t and a not in s_agents:
                scores[a, t] = 3 if a in t_agents else -1
    vals = ValuationMatrix.symmetric_from_pairs(N, scores)

    n3 = V // 3 + 2
    seats = SeatGraph.disjoint_union([SeatGraph.cycle(3)] * n3 + [SeatGraph.cycle(_GROUP - 1)] * V)
    triangles = [tuple(range(3 * t, 3 * t + 3)) for t in range(n3)]
    cycles = [tuple(range(3 * n3 + (_GROUP - 1) * i, 3 * n3 + (_GROUP - 1) * (i + 1))) for i in range(V)]
    inst = Instance(tuple(names), vals, seats, Utility.W)
    if perturb:
        inst = perturb_strict(inst, spec)
    layout = {
        "groups": groups,
        "first": first,
        "s": s_agents,
        "t": t_agents,
        "triangles": triangles,
        "cycles": cycles,
    }
    return GeneratedInstance(inst, pit, "pit-w-strict", tuple(roles), tuple(anchors), layout)


# ---------------------------------------------------------------------------
# Bin Packing -> 1-D B-utility on paths


def default_epsilon(n_agents: int) -> Fraction:
    return Fraction(1, 4 * n_agents * n_agents)


def gen_binpacking_to_1d_b(bp: BinPackingInstance, eps=None) -> GeneratedInstance:
    """Items become runs of agents on a line; bins become paths of C seats."""
    pre = bp.preprocess()
    n = sum(pre.sizes)
    eps = default_epsilon(n) if eps is None else as_fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if eps * (max(pre.sizes) - 2) >= 1:
        raise ValueError("epsilon too large: an intra-item gap would reach the inter-item gap")
    positions, names, anchors, items = [], [], [], []
    x = Fraction(0)
    for i, s in enumerate(pre.sizes):
        if i:
            x += 2
        run = []
        for j in range(s):
            if j:
                x += 1 + (j - 1) * eps
            positions.append(x)
            names.append(f"x{i}.{j + 1}")
            anchors.append(i)
            run.append(len(names) - 1)
        items.append(run)
    pos = Positions(positions)
    seats = SeatGraph.disjoint_union([SeatGraph.path(pre.capacity)] * pre.bins)
    paths = [tuple(range(b * pre.capacity, (b + 1) * pre.capacity)) for b in range(pre.bins)]
    inst = Instance(tuple(names), valuations_from_positions(pos), seats, Utility.B, pos)
    layout = {"preprocessed": pre, "items": items, "paths": paths, "epsilon": eps}
    return GeneratedInstance(inst, bp, "binpack-1d", ("item",) * n, tuple(anchors), layout)


# ---------------------------------------------------------------------------
# forward-direction arrangements


def arrangement_from_triangle_partition(gi: GeneratedInstance, part) -> Arrangement:
    pit = gi.source
    if not isinstance(pit, PitInstance):
        raise ValueError("instance was not generated from a PIT source")
    check_triangle_partition(pit, part)
    part = [tuple(sorted(t)) for t in part]
    L = gi.layout
    seat_of = [-1] * gi.instance.n

    def put(agent, vertex):
        seat_of[agent] = vertex

    if gi.family in ("pit-b", "pit-s-strict"):
        q = L["q"]
        on_cycle = set()
        for (i, j, k), verts in zip(part, L["triangles"]):
            trio = (q[i, j, k], q[j, i, k], q[k, i, j])
            for a, v in zip(trio, verts):
                put(a, v)
            on_cycle.update(trio)
        for i, (centre, leaves) in enumerate(L["stars"]):
            put(L["p"][i], centre)
            rest = [a for key, a in q.items() if key[0] == i and a not in on_cycle] + L["r"][i]
            for a, v in zip(rest, leaves):
                put(a, v)
    elif gi.family == "pit-w-binary":
        for tri, verts in zip(part, L["triangles"]):
            for i, v in zip(tri, verts):
                put(L["p"][i], v)
        for i, (u, v) in enumerate(L["pairs"]):
            put(L["p1"][i], u)
            put(L["p2"][i], v)
    elif gi.family == "pit-w-strict":
        first = L["first"]
        chosen = {}
        for (i, j, k), verts in zip(part, L["triangles"]):
            trio = (first[i, j, k], first[j, i, k], first[k, i, j])
            for a, v in zip(trio, verts):
                put(a, v)
            chosen[i], chosen[j], chosen[k] = trio
        for a, v in zip(L["s"], L["triangles"][-2]):
            put(a, v)
        for a, v in zip(L["t"], L["triangles"][-1]):
            put(a, v)
        for i, group in enumerate(L["groups"]):
            rest = [a for a in group if a != chosen[i]]
            for a, v in zip(rest, L["cycles"][i]):
                put(a, v)
    else:
        raise ValueError(f"family {gi.family!r} has no triangle-partition arrangement")
    return Arrangement(seat_of)


def triangles_from_arrangement(gi: GeneratedInstance, arr: Arrangement) -> TrianglePartition:
    """Read the source vertices off the agents seated on the triangle components."""
    out = []
    for verts in gi.layout["triangles"]:
        agents = [arr.agent_at[v] for v in verts]
        anchors = [gi.anchors[a] for a in agents]
        if None in anchors:
            continue  # the S/T triangles of the strict W family
        out.append(tuple(sorted(anchors)))
    return out


def arrangement_from_packing(gi: GeneratedInstance, packing) -> Arrangement:
    """Seat each bin's items, lowest item first, left to right on its path.

    ``packing`` assigns a bin to every original item; the unit padding items
    are spread over the remaining room in each bin.
    """
    bp = gi.source
    if not isinstance(bp, BinPackingInstance) or gi.family != "binpack-1d":
        raise ValueError("instance was not generated from a Bin Packing source")
    bp.check_packing(packing)
    L = gi.layout
    pre: BinPackingInstance = L["preprocessed"]
    full = list(packing)
    room = [bp.capacity] * bp.bins
    for item, b in enumerate(packing):
        room[b] -= bp.sizes[item]
    for _ in range(len(pre.sizes) - len(bp.sizes)):
        b = next(b for b in range(bp.bins) if room[b] > 0)
        room[b] -= 1
        full.append(b)
    seat_of = [-1] * gi.instance.n
    for b, path in enumerate(L["paths"]):
        agents = [a for item, run in enumerate(L["items"]) if full[item] == b for a in run]
        for a, v in zip(agents, path):
            seat_of[a] = v
    return Arrangement(seat_of)


# ---------------------------------------------------------------------------
# random instances

GRAPH_CLASSES = (
    "matching",
    "path",
    "cycle",
    "star",
    "cluster",
    "arbitrary",
    "single_path",
    "single_cycle",
    "mixed",
)


def _split(rng: random.Random, n: int, lo: int, hi: int | None = None) -> list[int]:
    """Random composition of n into parts in [lo, hi]; the last part absorbs leftovers."""
    parts = []
    left = n
    while left:
        if left < 2 * lo:
            parts.append(left)
            break
        top = left - lo if hi is None else min(hi, left - lo)
        parts.append(rng.randint(lo, max(lo, top)))
        left -= parts[-1]
    return parts


def random_seat_graph(rng: random.Random, n: int, graph_class: str) -> SeatGraph:
    if graph_class not in GRAPH_CLASSES:
        raise ValueError(f"unknown graph class {graph_class!r}")
    if graph_class == "matching":
        if n % 2:
            raise ValueError("a matching graph needs an even number of vertices")
        g = SeatGraph.matching(n // 2)
    elif graph_class == "single_path":
        g = SeatGraph.path(n)
    elif graph_class == "single_cycle":
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        g = SeatGraph.cycle(n)
    elif graph_class == "path":
        g = SeatGraph.disjoint_union(SeatGraph.path(k) for k in _split(rng, n, 2))
    elif graph_class == "cycle":
        if n < 3:
            raise ValueError("a cycle graph needs at least 3 vertices")
        g = SeatGraph.disjoint_union(SeatGraph.cycle(k) for k in _split(rng, n, 3))
    elif graph_class == "star":
        g = SeatGraph.disjoint_union(SeatGraph.star(k - 1) for k in _split(rng, n, 2))
    elif graph_class == "cluster":
        g = SeatGraph.disjoint_union(SeatGraph.clique(k) for k in _split(rng, n, 1, 5))
    elif graph_class == "arbitrary":
        p = rng.uniform(0.2, 0.7)
        g = SeatGraph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])
    else:  # mixed
        parts = []
        for k in _split(rng, n, 1, 6):
            kind = rng.choice(["path", "cycle", "star", "clique"])
            if kind == "cycle" and k >= 3:
                parts.append(SeatGraph.cycle(k))
            elif kind == "star" and k >= 2:
                parts.append(SeatGraph.star(k - 1))
            elif kind == "clique":
                parts.append(SeatGraph.clique(k))
            else:
                parts.append(SeatGraph.path(k))
        g = SeatGraph.disjoint_union(parts)
    if graph_class in ("single_path", "single_cycle"):
        return g
    # hide the construction order behind a random relabelling
    perm = list(range(n))
    rng.shuffle(perm)
    return SeatGraph(n, [(perm[u], perm[v]) for u, v in g.edges])


def gen_random(
    n: int,
    graph_class: str = "arbitrary",
    seed: int = 0,
    utility="S",
    *,
    symmetric: bool = False,
    binary: bool = False,
    strict: bool = False,
    nonnegative: bool = False,
    positive: bool = False,
    one_dimensional: bool = False,
    unique_positions: bool = False,
    max_value: int = 5,
) -> Instance:
    """Deterministic random instance with the requested graph and preference classes."""
    if n < 1:
        raise ValueError("need at least one agent")
    if unique_positions:
        one_dimensional = True
    if one_dimensional:
        if n < 2:
            raise ValueError("1-D preferences need at least two agents")
        if binary:
            raise ValueError("1-D preferences are never binary for more than two coincident agents")
        if strict:
            raise ValueError("strictness of 1-D preferences is not controllable by sampling")
        symmetric = True
    if binary and strict:
        if n > 3 or (symmetric and n > 2):
            raise ValueError("binary and strict preferences are incompatible for this many agents")
    if binary and positive and strict and n > 2:
        raise ValueError("positive binary preferences are all ones and cannot be strict")
    rng = random.Random(seed)
    seats = random_seat_graph(rng, n, graph_class)

    if one_dimensional:
        if unique_positions:
            pos = rng.sample(range(3 * n + 1), n)
        else:
            pos = [rng.randint(0, 2 * n) for _ in range(n)]
        return Instance.one_dimensional(pos, seats, utility)

    lo = 1 if positive else 0 if (nonnegative or binary) else -max_value
    hi = 1 if binary else max_value

    def draw():
        if binary:
            return rng.randint(lo, hi)
        den = rng.choice((1, 1, 2, 3))
        return Fraction(rng.randint(lo * den, hi * den), den)

    pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
    rows = [[None] * n for _ in range(n)]
    if strict and not binary:
        if symmetric:
            vals = _distinct_values(rng, len(pairs), lo)
            for (p, q), v in zip(pairs, vals):
                rows[p][q] = rows[q][p] = v
        else:
            for p in range(n):
                vals = _distinct_values(rng, n - 1, lo)
                for q, v in zip([q for q in range(n) if q != p], vals):
                    rows[p][q] = v
    elif strict:  # binary and strict: n <= 3 checked above
        for p in range(n):
            others = [q for q in range(n) if q != p]
            vals = [0, 1][: len(others)]
            if positive:
                vals = [1]
            rng.shuffle(vals)
            for q, v in zip(others, vals):
                rows[p][q] = v
    else:
        for p, q in pairs:
            rows[p][q] = draw()
            rows[q][p] = rows[p][q] if symmetric else draw()
    return Instance.build(rows, seats, utility)


def _distinct_values(rng: random.Random, k: int, lo: int) -> list[Fraction]:
    base = lo if lo >= 0 else -k
    return [Fraction(base + x) for x in rng.sample(range(2 * k + 2), k)]
