"""Walk through the hardness gadgets on tiny sources.

Partition Into Triangles becomes a seating problem with binary preferences and
worst-neighbour utility: a graph splits into triangles exactly when every
guest can get utility 1. We check this on a few six-vertex graphs, then read
the triangles back out of the seating the search finds.

Bin Packing becomes a 1-D seating problem on paths. Envy-freeness tracks
packability, but the "everyone sits next to a close neighbour" threshold does
not: an item split across two bins still gives every agent a close neighbour.
"""

from seatplan import (
    BinPackingInstance,
    PitInstance,
    arrangement_from_packing,
    arrangement_from_triangle_partition,
    classify_seat_graph,
    find_envy_free_exact,
    find_min_utility_at_least,
    gen_binpacking_to_1d_b,
    gen_pit_to_efa_w_binary,
    is_envy_free,
    solve_binpacking_bruteforce,
    solve_pit_bruteforce,
    triangles_from_arrangement,
)

GRAPHS = {
    "two triangles and a bridge": PitInstance(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4)]
    ),
    "hexagon": PitInstance(6, [(i, (i + 1) % 6) for i in range(6)]),
    "bowtie with a tail loop": PitInstance(
        6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (1, 5)]
    ),
}


def triangles():
    print("Partition Into Triangles -> worst-neighbour seating\n")
    for name, pit in GRAPHS.items():
        gi = gen_pit_to_efa_w_binary(pit)
        inst = gi.instance
        shape = classify_seat_graph(inst.seats).summary()
        part = solve_pit_bruteforce(pit)
        res = find_min_utility_at_least(inst, 1)
        print(f"{name}: {inst.n} agents on {len(shape)} tables")
        print(f"  brute-force partition: {part}")
        print(f"  seating with everyone at 1: {res.status} ({res.nodes_explored} nodes)")
        if res.found:
            print(f"  triangles read off the seating: {triangles_from_arrangement(gi, res.witness)}")
        if part is not None:
            fwd = arrangement_from_triangle_partition(gi, part)
            print(f"  seating built from the partition is envy-free: {is_envy_free(inst, fwd)}")
        print(f"  envy-free seating exists: {find_envy_free_exact(inst).status}\n")


def packing():
    print("Bin Packing -> 1-D best-neighbour seating on paths\n")
    for sizes, cap, bins in (([2, 1, 1], 2, 2), ([2, 2, 2], 3, 2)):
        bp = BinPackingInstance(sizes, cap, bins)
        gi = gen_binpacking_to_1d_b(bp)
        inst = gi.instance
        pack = solve_binpacking_bruteforce(bp)
        bound = inst.positions.span - inst.n * gi.layout["epsilon"]
        print(f"items {sizes}, {bins} bins of capacity {cap}: {inst.n} agents")
        print(f"  packing: {pack}")
        if pack is not None:
            print(f"  seating from the packing is envy-free: "
                  f"{is_envy_free(inst, arrangement_from_packing(gi, pack))}")
        print(f"  envy-free seating exists: {find_envy_free_exact(inst).status}")
        res = find_min_utility_at_least(inst, bound)
        print(f"  everyone reaches the close-neighbour bound: {res.status}")
        if res.found and pack is None:
            paths = gi.layout["paths"]
            rows = [[inst.agents[res.witness.agent_at[v]] for v in p] for p in paths]
            print(f"  ...by splitting an item across paths: {rows}")
        print()


if __name__ == "__main__":
    triangles()
    packing()
