"""Polynomial constructions of exchange-stable arrangements.

* :func:`algorithm1` - greedy pair-first seating for symmetric preferences
  under B-utility, O(n^3).
* :func:`oned_consecutive` - consecutive left-to-right placement for 1-D
  preferences on path/cycle seat graphs; stable under S- and W-utility.

Ties are always broken towards the smallest index (pairs lexicographically,
then agents, then vertices), so both constructors are deterministic.
"""

from __future__ import annotations

from .model import (
    Arrangement,
    Instance,
    Utility,
    ValuationMatrix,
    classify_seat_graph,
    is_symmetric,
    require_valid,
)


class PairQueue:
    """All unordered agent pairs sorted by descending score.

    Pairs with equal score are ordered lexicographically. For every agent the
    pairs containing it are threaded through ``next_link`` so that following
    the links from ``head[p]`` visits exactly p's pairs, best first.
    ``joint_favourites[p]`` counts p's pairs tied at p's top score and
    ``next_best[p]`` indexes the first of p's pairs after that block (or -1).
    """

    def __init__(self, vals: ValuationMatrix):
        n = vals.n
        s = vals.scaled
        order = sorted((-s[i][j], i, j) for i in range(n) for j in range(i + 1, n))
        self.n = n
        self.first = [i for _, i, _ in order]
        self.second = [j for _, _, j in order]
        self.score = [-neg for neg, _, _ in order]
        m = len(order)
        # next_link[k] = (next pair index for first[k], next pair index for second[k])
        self.next_link = [[-1, -1] for _ in range(m)]
        self.head = [-1] * n
        last = [-1] * n
        for k in range(m):
            for slot, p in enumerate((self.first[k], self.second[k])):
                if last[p] == -1:
                    self.head[p] = k
                else:
                    prev = last[p]
                    self.next_link[prev][0 if self.first[prev] == p else 1] = k
                last[p] = k
        self.joint_favourites = [0] * n
        self.next_best = [-1] * n
        for p in range(n):
            ks = self.pairs_of(p)
            if not ks:
                continue
            top = self.score[ks[0]]
            c = 0
            while c < len(ks) and self.score[ks[c]] == top:
                c += 1
            self.joint_favourites[p] = c
            self.next_best[p] = ks[c] if c < len(ks) else -1

    def __len__(self):
        return len(self.score)

    def other(self, k: int, p: int) -> int:
        return self.second[k] if self.first[k] == p else self.first[k]

    def pairs_of(self, p: int) -> list[int]:
        out, k = [], self.head[p]
        while k != -1:
            out.append(k)
            k = self.next_link[k][0 if self.first[k] == p else 1]
        return out


def algorithm1(inst: Instance) -> Arrangement:
    """Exchange-stable arrangement for symmetric preferences under B-utility.

    1. While two adjacent vertices are free, seat the best-scoring pair of
       unseated agents on the first such edge.
    2. Before the first pair and after each one, repeatedly seat any unseated
       agent whose favourite among (unseated agents + frontier) lies in the
       frontier, on a free vertex next to that favourite. The frontier holds
       seated agents that still have a free neighbouring vertex. A free
       isolated vertex counts as an extra option worth 0: an agent whose
       eligible partners are all valued below 0 takes it instead.
    3. Leftover agents, in index order, take the free vertex where their
       B-utility is highest.
    """
    require_valid(inst)
    if inst.utility is not Utility.B:
        raise ValueError("algorithm1 requires B-utility")
    if not is_symmetric(inst.valuations):
        raise ValueError("algorithm1 requires symmetric preferences")

    n = inst.n
    adj = inst.seats.adj
    scaled = inst.valuations.scaled
    Q = PairQueue(inst.valuations)
    prefs = [[Q.other(k, p) for k in Q.pairs_of(p)] for p in range(n)]

    seat_of = [-1] * n
    agent_at = [-1] * n
    in_frontier = [False] * n
    nbr_cursor = [0] * n  # only advances: occupied vertices never free up
    fav_cursor = [0] * n  # only advances: eligible set only shrinks

    def free_neighbour(v):
        a, i = adj[v], nbr_cursor[v]
        while i < len(a) and agent_at[a[i]] != -1:
            i += 1
        nbr_cursor[v] = i
        return a[i] if i < len(a) else -1

    def place(p, v):
        seat_of[p] = v
        agent_at[v] = p
        in_frontier[p] = free_neighbour(v) != -1
        for w in adj[v]:
            a = agent_at[w]
            if a != -1 and in_frontier[a] and free_neighbour(w) == -1:
                in_frontier[a] = False

    isolated = [v for v in range(n) if not adj[v]]
    iso_cursor = [0]

    def free_isolated():
        i = iso_cursor[0]
        while i < len(isolated) and agent_at[isolated[i]] != -1:
            i += 1
        iso_cursor[0] = i
        return isolated[i] if i < len(isolated) else -1

    def eligible(x):
        return seat_of[x] == -1 or in_frontier[x]

    def target(r):
        # free vertex next to a frontier agent tied for r's favourite among
        # eligible agents, a free isolated vertex if they are all negative, or -1
        pr, i = prefs[r], fav_cursor[r]
        while i < len(pr) and not eligible(pr[i]):
            i += 1
        fav_cursor[r] = i
        if i == len(pr):
            return -1
        row = scaled[r]
        best = row[pr[i]]
        if best < 0:
            iso = free_isolated()
            if iso != -1:
                return iso
        while i < len(pr) and row[pr[i]] == best:
            x = pr[i]
            if seat_of[x] != -1 and in_frontier[x]:
                return free_neighbour(seat_of[x])
            i += 1
        return -1

    def propagate():
        progress = True
        while progress:
            progress = False
            for r in unseated:
                v = target(r)
                if v != -1:
                    place(r, v)
                    unseated.remove(r)
                    progress = True
                    break

    unseated = list(range(n))
    vcur = 0
    qcur = 0
    propagate()
    while True:
        while vcur < n and (agent_at[vcur] != -1 or free_neighbour(vcur) == -1):
            vcur += 1
        if vcur == n:
            break
        u = vcur
        v = free_neighbour(u)
        while seat_of[Q.first[qcur]] != -1 or seat_of[Q.second[qcur]] != -1:
            qcur += 1
        p, q = Q.first[qcur], Q.second[qcur]
        place(p, u)
        place(q, v)
        unseated.remove(p)
        unseated.remove(q)
        propagate()

    free = [v for v in range(n) if agent_at[v] == -1]
    for p in unseated:
        row = scaled[p]
        best_v, best_u = -1, None
        for v in free:
            if agent_at[v] != -1:
                continue
            nb = adj[v]
            util = max(row[agent_at[w]] for w in nb) if nb else 0
            if best_u is None or util > best_u:
                best_v, best_u = v, util
        place(p, best_v)
    return Arrangement(seat_of)


def oned_consecutive(inst: Instance) -> Arrangement:
    """Fill each path/cycle component with the leftmost unseated agents, in order.

    Components are taken by smallest vertex; a path is entered at its
    lower-index end, a cycle at its lowest vertex.
    """
    if inst.positions is None:
        raise ValueError("consecutive placement needs 1-D positions")
    require_valid(inst)
    gc = classify_seat_graph(inst.seats)
    if not all(c.is_path or c.is_cycle for c in gc.components):
        raise ValueError("consecutive placement needs a path or cycle seat graph")
    pos = inst.positions.values
    agents = iter(sorted(range(inst.n), key=lambda a: (pos[a], a)))
    seat_of = [-1] * inst.n
    for comp in gc.components:
        for v in comp.order:
            seat_of[next(agents)] = v
    return Arrangement(seat_of)
