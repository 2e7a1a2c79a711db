"""Guests who live on a street and like whoever lives closest.

With 1-D preferences the valuation of a pair falls with distance. Seating
people in street order along a row of chairs (or around a round table) is
exchange-stable for sum and worst-neighbour utility. Envy-freeness is another
story: on a round table of four with distinct addresses some guest always
envies a neighbour, which the exhaustive search confirms.
"""

from seatplan import (
    Instance,
    SeatGraph,
    find_envy,
    find_envy_free_exact,
    is_exchange_stable,
    oned_consecutive,
    utilities,
)

HOUSES = {"ana": 0, "ben": 3, "cat": 4, "dan": 9, "eva": 10, "fin": 15}


def street(seats: SeatGraph, utility: str, people=HOUSES) -> Instance:
    return Instance.one_dimensional(list(people.values()), seats, utility, agents=list(people))


def main():
    for label, seats in (("a row of six chairs", SeatGraph.path(6)),
                         ("two round tables of three", SeatGraph.disjoint_union([SeatGraph.cycle(3)] * 2))):
        for u in ("S", "W"):
            inst = street(seats, u)
            arr = oned_consecutive(inst)
            order = [inst.agents[arr.agent_at[v]] for v in range(inst.n)]
            us = ", ".join(str(x) for x in utilities(inst, arr))
            print(f"{label}, {u}-utility: {order}")
            print(f"  utilities {us}; exchange-stable: {is_exchange_stable(inst, arr)}")

    four = dict(list(HOUSES.items())[:4])
    inst = street(SeatGraph.cycle(4), "S", four)
    arr = oned_consecutive(inst)
    p, q = find_envy(inst, arr)
    print(f"\nRound table of four {list(four)}: in street order {inst.agents[p]} envies {inst.agents[q]}")
    res = find_envy_free_exact(inst, dedup=False)
    print(f"exhaustive search for an envy-free seating ({res.nodes_explored} nodes): {res.status}")


if __name__ == "__main__":
    main()
