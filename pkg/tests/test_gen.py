import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from seatplan import (
    BinPackingInstance,
    InvalidInstanceError,
    PerturbationSpec,
    PitInstance,
    arrangement_from_packing,
    arrangement_from_triangle_partition,
    classify_preferences,
    classify_seat_graph,
    evaluate,
    find_envy_free_exact,
    find_min_utility_at_least,
    gen_binpacking_to_1d_b,
    gen_pit_to_efa_b,
    gen_pit_to_efa_s_strict,
    gen_pit_to_efa_w_binary,
    gen_pit_to_efa_w_strict,
    gen_random,
    perturb_strict,
    solve_binpacking_bruteforce,
    solve_pit_bruteforce,
    triangles_from_arrangement,
    validate_instance,
)
from seatplan.gen import check_triangle_partition
from strategies import instances

K3 = PitInstance(3, [(0, 1), (1, 2), (0, 2)])
TWO_TRIANGLES = PitInstance(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4)])
C6 = PitInstance(6, [(i, (i + 1) % 6) for i in range(6)])
# a 6-vertex graph with triangles but no partition: two triangles sharing vertex 2
BOWTIE = PitInstance(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (1, 5)])


class TestSources:
    def test_pit_oracle(self):
        assert solve_pit_bruteforce(K3) == [(0, 1, 2)]
        assert solve_pit_bruteforce(C6) is None
        assert solve_pit_bruteforce(BOWTIE) is None
        part = solve_pit_bruteforce(TWO_TRIANGLES)
        check_triangle_partition(TWO_TRIANGLES, part)

    def test_pit_limit(self):
        with pytest.raises(ValueError):
            solve_pit_bruteforce(PitInstance(15, []))

    def test_bin_oracle(self):
        pack = solve_binpacking_bruteforce(BinPackingInstance([4, 2, 2], 4, 2))
        assert pack is not None and pack[1] == pack[2] != pack[0]
        assert solve_binpacking_bruteforce(BinPackingInstance([3, 3], 4, 2)) is not None
        assert solve_binpacking_bruteforce(BinPackingInstance([3, 3, 2], 4, 2)) is None

    @given(st.lists(st.integers(1, 5), min_size=1, max_size=7), st.integers(1, 6), st.integers(1, 3))
    def test_bin_oracle_matches_product_search(self, sizes, cap, bins):
        bp = BinPackingInstance(sizes, cap, bins)
        want = any(
            all(sum(s for s, b in zip(sizes, m) if b == k) <= cap for k in range(bins))
            for m in itertools.product(range(bins), repeat=len(sizes))
        )
        got = solve_binpacking_bruteforce(bp)
        assert (got is not None) == want
        if got is not None:
            bp.check_packing(got)

    def test_preprocess(self):
        pre = BinPackingInstance([3, 1], 3, 2).preprocess()
        assert pre.capacity == 6 and sum(pre.sizes) == 12 and min(pre.sizes) >= 2
        with pytest.raises(InvalidInstanceError):
            BinPackingInstance([3, 3], 2, 2).preprocess()


class TestPitB:
    def test_counts_for_a_triangle(self):
        gi = gen_pit_to_efa_b(K3)
        assert gi.instance.n == 18
        assert sorted(classify_seat_graph(gi.instance.seats).summary()) == [("cycle", 3)] + [("star", 5)] * 3
        assert len(gi.roles) == 18 and validate_instance(gi.instance) == []

    def test_star_sizes(self):
        for pit in (K3, TWO_TRIANGLES, C6, BOWTIE):
            gc = classify_seat_graph(gen_pit_to_efa_b(pit).instance.seats)
            for kind, size in gc.summary():
                assert kind == "cycle" and size == 3 or kind == "star" and 4 <= size - 1 <= 19

    def test_degree_bounds(self):
        with pytest.raises(InvalidInstanceError):
            gen_pit_to_efa_b(PitInstance(3, [(0, 1), (1, 2)]))

    @pytest.mark.parametrize("pit", [K3, TWO_TRIANGLES])
    def test_forward_is_envy_free(self, pit):
        gi = gen_pit_to_efa_b(pit)
        arr = arrangement_from_triangle_partition(gi, solve_pit_bruteforce(pit))
        assert evaluate.is_envy_free(gi.instance, arr)
        assert evaluate.min_utility(gi.instance, arr) == 1

    def test_classes(self):
        pc = classify_preferences(gen_pit_to_efa_b(TWO_TRIANGLES).instance)
        assert pc.binary and pc.symmetric

    @pytest.mark.parametrize("pit", [K3, C6])
    def test_threshold_iff(self, pit):
        gi = gen_pit_to_efa_b(pit)
        r = find_min_utility_at_least(gi.instance, 1)
        assert r.found == (solve_pit_bruteforce(pit) is not None)
        if r.found:
            check_triangle_partition(pit, triangles_from_arrangement(gi, r.witness))


class TestPitSStrict:
    def test_strict_symmetric(self):
        pc = classify_preferences(gen_pit_to_efa_s_strict(K3).instance)
        assert pc.strict and pc.symmetric

    def test_forward_arrangement_has_envy(self):
        # a star leaf gains every perturbation around the centre by swapping with it
        gi = gen_pit_to_efa_s_strict(K3)
        arr = arrangement_from_triangle_partition(gi, [(0, 1, 2)])
        p, q = evaluate.find_envy(gi.instance, arr)
        assert gi.roles[q] == "p"

    @pytest.mark.parametrize("pit", [K3, C6])
    def test_threshold_iff(self, pit):
        gi = gen_pit_to_efa_s_strict(pit)
        assert find_min_utility_at_least(gi.instance, 1).found == (solve_pit_bruteforce(pit) is not None)


class TestPitWBinary:
    def test_agents(self):
        gi = gen_pit_to_efa_w_binary(K3)
        assert gi.instance.n == 9
        assert sorted(gi.roles) == ["p"] * 3 + ["p1"] * 3 + ["p2"] * 3
        pc = classify_preferences(gi.instance)
        assert pc.binary and pc.symmetric
        assert classify_seat_graph(gi.instance.seats).is_cycle_graph is False  # K2s are not cycles here
        assert {k for k, _ in classify_seat_graph(gi.instance.seats).summary()} == {"cycle", "K2"}

    def test_chain_wraps_around(self):
        gi = gen_pit_to_efa_w_binary(TWO_TRIANGLES)
        L = gi.layout
        assert gi.instance.value(L["p2"][5], L["p1"][0]) == 1

    @pytest.mark.parametrize("pit", [K3, TWO_TRIANGLES])
    def test_forward_is_envy_free(self, pit):
        gi = gen_pit_to_efa_w_binary(pit)
        arr = arrangement_from_triangle_partition(gi, solve_pit_bruteforce(pit))
        assert evaluate.is_envy_free(gi.instance, arr)

    @pytest.mark.parametrize("pit", [K3, TWO_TRIANGLES, C6, BOWTIE])
    def test_envy_free_iff_threshold(self, pit):
        gi = gen_pit_to_efa_w_binary(pit)
        ef = find_envy_free_exact(gi.instance).found
        thr = find_min_utility_at_least(gi.instance, 1).found
        assert ef == thr == (solve_pit_bruteforce(pit) is not None)


class TestPitWStrict:
    def test_shape(self):
        gi = gen_pit_to_efa_w_strict(K3)
        assert gi.instance.n == 18 * 3 + 6
        summary = sorted(classify_seat_graph(gi.instance.seats).summary())
        assert summary == [("cycle", 3)] * 3 + [("cycle", 17)] * 3
        pc = classify_preferences(gi.instance)
        assert pc.strict and pc.symmetric

    def test_base_levels(self):
        gi = gen_pit_to_efa_w_strict(TWO_TRIANGLES, perturb=False)
        assert set(gi.instance.valuations.distinct_values()) <= {3, 2, Fraction(3, 2), 1, 0, -1}
        t = gi.agents_with_role("t")[0]
        outsider = gi.agents_with_role("q")[0]
        assert gi.instance.value(t, outsider) == -1
        groups = gi.layout["groups"]
        assert all(len(g) == 18 for g in groups)

    @pytest.mark.parametrize("pit", [K3, TWO_TRIANGLES])
    def test_forward_is_envy_free(self, pit):
        gi = gen_pit_to_efa_w_strict(pit)
        arr = arrangement_from_triangle_partition(gi, solve_pit_bruteforce(pit))
        assert evaluate.is_envy_free(gi.instance, arr)


class TestBinPacking:
    def test_item_layout(self):
        eps = Fraction(1, 100)
        gi = gen_binpacking_to_1d_b(BinPackingInstance([2, 1], 3, 1), eps)
        # doubled sizes 4 and 2
        assert gi.instance.positions.values == (0, 1, 2 + eps, 3 + 3 * eps, 5 + 3 * eps, 6 + 3 * eps)
        D = gi.instance.positions.span
        assert gi.instance.value(0, 1) == D

    def test_unique_favourites(self):
        gi = gen_binpacking_to_1d_b(BinPackingInstance([3, 2, 1], 3, 2))
        vals = gi.instance.valuations
        for run in gi.layout["items"]:
            for k, a in enumerate(run):
                want = run[1] if k == 0 else run[k - 1]
                row = [(vals.rows[a][b], b) for b in range(gi.instance.n) if b != a]
                best = max(row)[0]
                assert [b for v, b in row if v == best] == [want]

    def test_epsilon_bound(self):
        with pytest.raises(ValueError):
            gen_binpacking_to_1d_b(BinPackingInstance([3], 3, 1), Fraction(1, 4))
        with pytest.raises(ValueError):
            gen_binpacking_to_1d_b(BinPackingInstance([3], 3, 1), 0)

    def test_graph(self):
        gi = gen_binpacking_to_1d_b(BinPackingInstance([2, 2], 2, 2))
        assert classify_seat_graph(gi.instance.seats).summary() == [("path", 4), ("path", 4)]

    @pytest.mark.parametrize(
        "sizes,cap,bins", [([2, 2], 4, 1), ([2, 2, 2, 2], 4, 2), ([1, 1], 1, 2), ([2, 1], 2, 2), ([1], 2, 2)]
    )
    def test_envy_free_iff_packable(self, sizes, cap, bins):
        bp = BinPackingInstance(sizes, cap, bins)
        pack = solve_binpacking_bruteforce(bp)
        gi = gen_binpacking_to_1d_b(bp)
        if gi.instance.n <= 8:
            assert find_envy_free_exact(gi.instance).found == (pack is not None)
        if pack is not None:
            assert evaluate.is_envy_free(gi.instance, arrangement_from_packing(gi, pack))

    def test_split_item_meets_the_utility_bound(self):
        # one item of size 2 over two unit bins: no packing, yet halves sit in
        # different paths and every agent still has its near neighbour
        bp = BinPackingInstance([2], 1, 2)
        gi = gen_binpacking_to_1d_b(bp)
        inst = gi.instance
        bound = inst.positions.span - inst.n * gi.layout["epsilon"]
        assert solve_binpacking_bruteforce(bp) is None
        assert find_envy_free_exact(inst).status == "none_exists"
        assert find_min_utility_at_least(inst, bound).found

    def test_split_item_meets_the_bound_even_when_items_fit(self):
        # three items of size 2 cannot share two bins of capacity 3, but the
        # third item's agents can be split pairwise across both paths
        bp = BinPackingInstance([2, 2, 2], 3, 2)
        gi = gen_binpacking_to_1d_b(bp)
        inst = gi.instance
        bound = inst.positions.span - inst.n * gi.layout["epsilon"]
        assert solve_binpacking_bruteforce(bp) is None
        assert find_envy_free_exact(inst).status == "none_exists"
        res = find_min_utility_at_least(inst, bound)
        assert res.found and evaluate.min_utility(inst, res.witness) >= bound


class TestPerturbation:
    @given(instances(min_n=2, max_n=8, symmetric=True))
    def test_strict_and_order_preserving(self, inst):
        out = perturb_strict(inst)
        pc = classify_preferences(out)
        assert pc.strict and pc.symmetric
        a, b = inst.valuations.rows, out.valuations.rows
        n = inst.n
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    if len({p, q, r}) == 3 and a[p][q] > a[p][r]:
                        assert b[p][q] > b[p][r]

    def test_delta_too_large(self):
        inst = gen_random(5, "path", 1, "S", symmetric=True, binary=True)
        with pytest.raises(ValueError):
            perturb_strict(inst, PerturbationSpec(Fraction(1, 10)))
        with pytest.raises(ValueError):
            PerturbationSpec(0)

    def test_binary_range(self):
        inst = gen_random(6, "cycle", 2, "B", symmetric=True, binary=True)
        out = perturb_strict(inst)
        M = 15
        d = PerturbationSpec.for_instance(inst).delta
        assert all(0 < v <= 1 + M * d for v in out.valuations.distinct_values())

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            perturb_strict(gen_random(4, "path", 1))


class TestRandom:
    def test_deterministic(self):
        assert gen_random(6, "cycle", 1, symmetric=True) == gen_random(6, "cycle", 1, symmetric=True)

    def test_unique_positions(self):
        inst = gen_random(9, "single_path", 4, unique_positions=True)
        assert inst.positions.unique and classify_preferences(inst).one_dimensional

    def test_binary(self):
        inst = gen_random(7, "arbitrary", 3, binary=True)
        assert set(inst.valuations.distinct_values()) <= {0, 1}

    def test_inconsistent(self):
        with pytest.raises(ValueError):
            gen_random(5, "path", 1, binary=True, strict=True)
        with pytest.raises(ValueError):
            gen_random(5, "matching", 1)
        with pytest.raises(ValueError):
            gen_random(5, "hypercube", 1)

    @pytest.mark.parametrize("graph", ["matching", "path", "cycle", "star", "cluster", "single_path", "single_cycle"])
    @pytest.mark.parametrize("flags", [{}, {"symmetric": True}, {"strict": True}, {"symmetric": True, "strict": True}, {"positive": True}])
    def test_requested_classes_hold(self, graph, flags):
        for seed in range(5):
            inst = gen_random(8, graph, seed, **flags)
            pc = classify_preferences(inst)
            gc = classify_seat_graph(inst.seats)
            for k, v in flags.items():
                assert getattr(pc, k) == v
            assert {
                "matching": gc.is_matching,
                "path": gc.is_path_graph,
                "cycle": gc.is_cycle_graph,
                "star": all(c.kind in ("star", "K2", "K1") or c.kind == "path" and c.size == 3 for c in gc.components),
                "cluster": gc.is_cluster_graph,
                "single_path": gc.summary() == [("path", 8)],
                "single_cycle": gc.summary() == [("cycle", 8)],
            }[graph]
