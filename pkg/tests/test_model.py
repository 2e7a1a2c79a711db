from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from seatplan import (
    Arrangement,
    Instance,
    InvalidInstanceError,
    Positions,
    SeatGraph,
    ValuationMatrix,
    classify_preferences,
    classify_seat_graph,
    swap,
    valuations_from_positions,
    validate_instance,
)
from seatplan.model import as_fraction
from strategies import arrangements, instances


def full(n, v=1):
    return [[None if p == q else v for q in range(n)] for p in range(n)]


class TestValuations:
    def test_self_valuation_is_an_error(self):
        m = ValuationMatrix(full(3))
        with pytest.raises(ValueError):
            m.value(1, 1)

    def test_values_are_exact(self):
        m = ValuationMatrix([[None, Fraction(1, 3)], ["1/2", None]])
        assert m.value(0, 1) == Fraction(1, 3)
        assert m.value(1, 0) == Fraction(1, 2)

    def test_inexact_float_rejected(self):
        with pytest.raises((TypeError, ValueError)):
            as_fraction(0.1)

    def test_scaled_copy_is_integral(self):
        m = ValuationMatrix([[None, Fraction(1, 3)], [Fraction(1, 2), None]])
        assert m.scale == 6
        assert m.scaled[0][1] == 2 and m.scaled[1][0] == 3


class TestValidation:
    def test_valid(self):
        inst = Instance.build(full(3), SeatGraph.path(3))
        assert validate_instance(inst) == []

    def test_count_mismatch(self):
        inst = Instance.build(full(3), SeatGraph.path(4))
        assert any("agent/vertex count mismatch" in p for p in validate_instance(inst))

    def test_positions_inconsistent(self):
        rows = [[None, 3, 2], [3, None, 2], [2, 2, None]]
        inst = Instance.build(rows, SeatGraph.path(3), positions=[0, 1, 3])
        problems = validate_instance(inst)
        # both directions of the (a0, a2) pair disagree with D - d + 1 = 1
        assert len(problems) == 2 and all("inconsistency" in p for p in problems)

    def test_missing_valuation(self):
        rows = full(3)
        rows[0][2] = None
        assert any("missing" in p for p in validate_instance(Instance.build(rows, SeatGraph.path(3))))

    def test_duplicate_names(self):
        inst = Instance.build(full(2), SeatGraph.path(2), agents=["a", "a"])
        assert validate_instance(inst)


class TestPositions:
    def test_three_points(self):
        m = valuations_from_positions(Positions([0, 1, 3]))
        assert (m.value(0, 1), m.value(1, 2), m.value(0, 2)) == (3, 2, 1)

    def test_coincident(self):
        assert valuations_from_positions(Positions([0, 0])).value(0, 1) == 1

    def test_single_agent_rejected(self):
        with pytest.raises(ValueError):
            valuations_from_positions(Positions([4]))

    def test_unique_flag_and_span(self):
        assert Positions([0, 2, 5]).unique
        assert not Positions([0, 2, 2]).unique
        assert Positions([3, -1, 2]).span == 4

    @given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=5), min_size=2, max_size=8))
    def test_always_symmetric_positive(self, pos):
        inst = Instance.one_dimensional(pos, SeatGraph.empty(len(pos)))
        pc = classify_preferences(inst)
        assert pc.symmetric and pc.positive and pc.one_dimensional


class TestPreferenceClasses:
    def test_all_ones(self):
        pc = classify_preferences(Instance.build(full(3), SeatGraph.path(3)))
        assert pc.binary and pc.symmetric and pc.nonnegative and pc.positive and not pc.strict

    def test_distinct_positions(self):
        pc = classify_preferences(Instance.one_dimensional([0, 1, 5], SeatGraph.path(3)))
        assert pc.symmetric and pc.positive and pc.one_dimensional and pc.unique_positions

    def test_asymmetric(self):
        rows = [[None, 1], [0, None]]
        assert not classify_preferences(Instance.build(rows, SeatGraph.path(2))).symmetric


class TestGraphClasses:
    def test_matching(self):
        gc = classify_seat_graph(SeatGraph.matching(3))
        assert gc.is_matching and gc.is_path_graph and gc.is_cluster_graph

    def test_cycle_plus_path(self):
        g = SeatGraph.disjoint_union([SeatGraph.cycle(4), SeatGraph.path(3)])
        gc = classify_seat_graph(g)
        assert not gc.is_cycle_graph and not gc.is_path_graph
        assert sorted(gc.summary()) == [("cycle", 4), ("path", 3)]

    def test_star(self):
        gc = classify_seat_graph(SeatGraph.star(5))
        assert gc.summary() == [("star", 6)] and gc.max_degree == 5

    def test_triangle_is_a_clique_and_a_cycle(self):
        gc = classify_seat_graph(SeatGraph.cycle(3))
        assert gc.is_cycle_graph and gc.is_cluster_graph

    def test_rejects_loops_and_parallel_edges(self):
        with pytest.raises(ValueError):
            SeatGraph(2, [(0, 0)])
        with pytest.raises(ValueError):
            SeatGraph(2, [(0, 1), (1, 0)])

    @given(instances(max_n=10))
    def test_component_sizes_sum(self, inst):
        gc = classify_seat_graph(inst.seats)
        assert sum(c.size for c in gc.components) == inst.seats.n
        assert gc.is_matching == all(k == "K2" for k, _ in gc.summary())


class TestArrangements:
    def test_swap(self):
        a = Arrangement([0, 1, 2])
        b = swap(a, 0, 1)
        assert b.seat_of == (1, 0, 2)
        assert b.agent_at == (1, 0, 2)

    def test_self_swap_rejected(self):
        with pytest.raises(ValueError):
            swap(Arrangement([0, 1]), 1, 1)

    def test_not_a_bijection(self):
        with pytest.raises(ValueError):
            Arrangement([0, 0])

    @given(st.integers(2, 9).flatmap(lambda n: st.tuples(arrangements(n), st.integers(0, n - 1), st.integers(0, n - 1))))
    def test_swap_involution(self, args):
        arr, p, q = args
        if p == q:
            return
        once = swap(arr, p, q)
        assert swap(once, p, q) == arr
        assert [r for r in range(len(arr)) if once.seat_of[r] != arr.seat_of[r]] == sorted((p, q))
        assert all(once.agent_at[once.seat_of[r]] == r for r in range(len(arr)))


def test_require_valid_error_type():
    from seatplan.model import require_valid

    with pytest.raises(InvalidInstanceError):
        require_valid(Instance.build(full(3), SeatGraph.path(2)))
