import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from seatplan import (
    Arrangement,
    Instance,
    SearchBudget,
    SeatGraph,
    ValuationMatrix,
    classify_seat_graph,
    enumerate_arrangements,
    evaluate,
    find_envy_free_exact,
    find_exchange_stable_exact,
    find_min_utility_at_least,
    gen_random,
    solve_mua_exact,
    solve_mwa_exact,
)
from strategies import instances


def zeros(n):
    return ValuationMatrix.symmetric_from_pairs(n, {})


class TestEnumeration:
    def test_triangle(self):
        inst = Instance.build(zeros(3), SeatGraph.cycle(3))
        assert len(list(enumerate_arrangements(inst))) == 6
        assert len(list(enumerate_arrangements(inst, dedup=True))) == 1

    def test_matching(self):
        inst = Instance.build(zeros(4), SeatGraph.matching(2))
        assert len(list(enumerate_arrangements(inst, dedup=True))) == 3

    def test_cap(self):
        inst = Instance.build(zeros(11), SeatGraph.path(11))
        with pytest.raises(ValueError):
            next(enumerate_arrangements(inst))
        assert next(enumerate_arrangements(inst, override=True)) == Arrangement.identity(11)

    @pytest.mark.parametrize(
        "g",
        [
            SeatGraph.path(5),
            SeatGraph.cycle(5),
            SeatGraph.cycle(6),
            SeatGraph.star(4),
            SeatGraph.clique(4),
            SeatGraph.disjoint_union([SeatGraph.path(3), SeatGraph.path(3)]),
            SeatGraph.disjoint_union([SeatGraph.cycle(3), SeatGraph.path(2), SeatGraph.path(2)]),
            SeatGraph.disjoint_union([SeatGraph.star(3), SeatGraph.empty(2)]),
            SeatGraph.disjoint_union([SeatGraph.cycle(4), SeatGraph.path(3)]),
            SeatGraph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]),
        ],
    )
    def test_one_representative_per_orbit(self, g):
        # automorphisms act freely on bijections, so orbits number n!/|Aut|
        inst = Instance.build(zeros(g.n), g)
        reps = list(enumerate_arrangements(inst, dedup=True))
        assert len(set(reps)) == len(reps)
        if all(c.kind != "other" for c in classify_seat_graph(g).components):
            assert len(reps) == math.factorial(g.n) // oracles.automorphism_count(g)
        else:
            assert len(reps) == math.factorial(g.n)


class TestOptima:
    def test_all_zero(self):
        inst = Instance.build(zeros(5), SeatGraph.cycle(5), "S")
        assert solve_mwa_exact(inst).objective == 0
        assert solve_mua_exact(inst).objective == 0

    def test_one_dimensional_path(self):
        inst = Instance.one_dimensional([0, 1, 3], SeatGraph.path(3), "S")
        assert solve_mwa_exact(inst).objective == oracles.best_welfare(inst)
        assert solve_mua_exact(inst).objective == oracles.best_min(inst)

    @pytest.mark.parametrize("seed", range(6))
    def test_matching_welfare_is_twice_a_matching(self, seed):
        inst = gen_random(6, "matching", seed, "S", symmetric=True)
        assert solve_mwa_exact(inst).objective == 2 * oracles.max_weight_matching_value(inst)

    @given(instances(min_n=2, max_n=6))
    def test_against_permutations(self, inst):
        mwa, mua = solve_mwa_exact(inst), solve_mua_exact(inst)
        assert mwa.objective == oracles.best_welfare(inst)
        assert mua.objective == oracles.best_min(inst)
        assert evaluate.welfare(inst, mwa.witness) == mwa.objective
        assert evaluate.min_utility(inst, mua.witness) == mua.objective


class TestExistence:
    def test_one_dimensional_cycle_has_no_envy_free(self):
        inst = Instance.one_dimensional([0, 2, 3, 7], SeatGraph.cycle(4), "S")
        assert find_envy_free_exact(inst).status == "none_exists"

    def test_one_dimensional_path_has_no_envy_free(self):
        inst = Instance.one_dimensional([0, 1, 5, 6, 9], SeatGraph.path(5), "S")
        assert find_envy_free_exact(inst).status == "none_exists"

    @given(instances(min_n=2, max_n=6))
    def test_against_permutations(self, inst):
        ef = find_envy_free_exact(inst)
        st_ = find_exchange_stable_exact(inst)
        assert ef.found == oracles.any_envy_free(inst)
        assert st_.found == oracles.any_stable(inst)
        if ef.found:
            assert evaluate.is_envy_free(inst, ef.witness)

    @given(instances(min_n=2, max_n=8, symmetric=True))
    def test_symmetric_always_stable(self, inst):
        assert find_exchange_stable_exact(inst).found


class TestThreshold:
    def test_zero_threshold_nonnegative(self):
        inst = gen_random(7, "arbitrary", 3, "S", nonnegative=True)
        r = find_min_utility_at_least(inst, 0)
        # no pruning fires; only symmetry constraints can force a retry
        assert r.found and r.nodes_explored < 4 * inst.n

    @given(instances(min_n=2, max_n=6), st.integers(-2, 2))
    def test_agrees_with_mua(self, inst, shift):
        best = solve_mua_exact(inst).objective
        t = best + Fraction(shift, 2)
        r = find_min_utility_at_least(inst, t)
        assert r.found == (t <= best)
        if r.found:
            assert evaluate.min_utility(inst, r.witness) >= t


class TestBudget:
    def test_node_budget(self):
        inst = gen_random(9, "arbitrary", 1, "S")
        r = solve_mwa_exact(inst, SearchBudget(max_nodes=10))
        assert r.status == "inconclusive" and r.nodes_explored == 11
        r = find_envy_free_exact(inst, SearchBudget(max_nodes=5))
        assert r.status in ("inconclusive", "found")

    def test_time_budget(self):
        inst = gen_random(10, "arbitrary", 1, "S", symmetric=True)
        r = solve_mwa_exact(inst, SearchBudget(max_nodes=None, time_limit=0.0))
        assert r.status in ("inconclusive", "found")


@given(instances(min_n=2, max_n=6))
def test_dedup_and_full_search_agree(inst):
    for solve in (solve_mwa_exact, solve_mua_exact):
        assert solve(inst).objective == solve(inst, dedup=False).objective
    for solve in (find_envy_free_exact, find_exchange_stable_exact):
        assert solve(inst).status == solve(inst, dedup=False).status
