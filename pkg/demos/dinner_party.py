"""Seat eight guests at two tables and look for a plan nobody wants to swap out of.

Guests score each other symmetrically. Each table is a cycle of four seats, so
everyone has two neighbours. We compare three ways of finding a stable plan:
the greedy construction for best-neighbour utility, and swap dynamics for
sum and worst-neighbour utility.
"""

from seatplan import (
    Arrangement,
    Instance,
    PairSelectionPolicy,
    SeatGraph,
    ValuationMatrix,
    algorithm1,
    find_blocking_pairs,
    find_envy_free_exact,
    is_exchange_stable,
    run_swap_dynamics,
    solve_mwa_exact,
    utilities,
    welfare,
)

GUESTS = ["ada", "bo", "cy", "dee", "eli", "fay", "gus", "hal"]

# how much each pair enjoys sitting together; unlisted pairs are neutral
LIKES = {
    ("ada", "bo"): 5, ("ada", "cy"): 2, ("bo", "dee"): 3, ("cy", "dee"): 4,
    ("eli", "fay"): 5, ("fay", "gus"): 1, ("gus", "hal"): 4, ("eli", "hal"): 2,
    ("ada", "hal"): -3, ("bo", "gus"): -2, ("cy", "fay"): 3, ("dee", "eli"): -1,
}


def build(utility: str) -> Instance:
    idx = {g: i for i, g in enumerate(GUESTS)}
    scores = {(idx[a], idx[b]): v for (a, b), v in LIKES.items()}
    vals = ValuationMatrix.symmetric_from_pairs(len(GUESTS), scores, 0)
    tables = SeatGraph.disjoint_union([SeatGraph.cycle(4), SeatGraph.cycle(4)])
    return Instance.build(vals, tables, utility, agents=GUESTS)


def show(inst: Instance, arr: Arrangement, title: str):
    print(f"\n{title}")
    for t in range(2):
        seats = [inst.agents[arr.agent_at[v]] for v in range(4 * t, 4 * t + 4)]
        print(f"  table {t + 1}: " + " - ".join(seats))
    us = utilities(inst, arr)
    print("  utilities:", ", ".join(f"{g}={u}" for g, u in zip(inst.agents, us)))
    print(f"  welfare {welfare(inst, arr)}, exchange-stable: {is_exchange_stable(inst, arr)}")


def main():
    best = build("B")
    arr = algorithm1(best)
    show(best, arr, "Best-neighbour utility, greedy construction")

    for u in ("S", "W"):
        inst = build(u)
        start = Arrangement.identity(inst.n)
        print(f"\nStarting plan under {u}-utility has "
              f"{len(find_blocking_pairs(inst, start))} blocking pairs")
        trace = run_swap_dynamics(inst, start, PairSelectionPolicy("best"))
        print(f"  swap dynamics settled after {trace.step_count} swaps")
        show(inst, trace.final, f"{u}-utility after swapping")

    inst = build("S")
    opt = solve_mwa_exact(inst)
    show(inst, opt.witness, f"Maximum welfare plan ({opt.nodes_explored} search nodes)")

    ef = find_envy_free_exact(inst)
    print(f"\nIs there a plan where nobody envies anybody under S-utility? {ef.status}")
    if ef.found:
        show(inst, ef.witness, "Envy-free plan")


if __name__ == "__main__":
    main()
