import pytest

from satgame.engine import Player, Variant, apply_action, initial_state, is_terminal
from satgame.families import PathFamily, TreeFamily
from satgame.graph import Graph
from satgame.solver import (
    BudgetExceeded,
    CapExceeded,
    best_response,
    load_table,
    save_table,
    solve,
)
from satgame.strategies import make_strategy
from satgame.verify import naive_value

P4, P5 = PathFamily(4), PathFamily(5)
BOTH = (Player.PROLONGER, Player.SHORTENER)


class TestSolveAnchors:
    def test_three_vertices(self):
        for first in BOTH:
            assert solve(3, P4, first_mover=first).score == 3

    def test_four_vertices_depends_on_first_mover(self):
        assert solve(4, P4, first_mover=Player.PROLONGER).score == 2
        assert solve(4, P4, first_mover=Player.SHORTENER).score == 3

    def test_five_vertices(self):
        for first in BOTH:
            assert solve(5, P4, first_mover=first).score == 4

    def test_tree_game_six(self):
        for first in BOTH:
            assert solve(6, TreeFamily(4), first_mover=first).score == 6


class TestOracleEquivalence:
    @pytest.mark.parametrize("famname", ["P4", "P5", "Trees:3", "Star:3"])
    def test_standard_small(self, famname):
        from satgame.families import parse_family

        fam = parse_family(famname)
        for n in range(2, 6):
            for first in BOTH:
                assert (
                    solve(n, fam, first_mover=first).score
                    == naive_value(Graph.empty(n), first, fam, Variant.STANDARD)
                )

    def test_pass_variant_small(self):
        for n in range(2, 5):
            for first in BOTH:
                assert (
                    solve(n, P4, Variant.PROLONGER_MAY_PASS, first).score
                    == naive_value(Graph.empty(n), first, P4, Variant.PROLONGER_MAY_PASS)
                )


class TestSandwich:
    def test_fixed_strategies_bracket_the_value(self):
        for fam, sname, pname in [(P4, "s-p4", "p-p4"), (P5, "s-p5", "p-p5")]:
            for n in range(4, 8):
                mid = solve(n, fam).score
                hi = best_response(n, fam, Variant.STANDARD, make_strategy(sname), Player.SHORTENER).score
                lo = best_response(n, fam, Variant.STANDARD, make_strategy(pname), Player.PROLONGER).score
                assert lo <= mid <= hi


class TestConsistency:
    def test_value_within_saturated_edge_range(self):
        from satgame.analysis import saturated_graphs

        for fam, n in [(P4, 5), (P4, 6), (P5, 6), (TreeFamily(4), 6)]:
            sizes = [g.m for g in saturated_graphs(n, fam)]
            score = solve(n, fam).score
            assert min(sizes) <= score <= max(sizes)

    def test_fresh_tables_agree(self):
        a = solve(6, P5).score
        b = solve(6, P5).score
        assert a == b

    def test_shared_table_reuse(self):
        table = {}
        a = solve(6, P4, table=table).score
        cached_positions = len(table)
        b = solve(6, P4, table=table).score
        assert a == b and len(table) == cached_positions

    def test_parallel_equals_serial(self):
        assert solve(7, P5, workers=1).score == solve(7, P5, workers=4).score


class TestPrincipalVariation:
    def test_pv_replays_to_stated_score(self):
        for fam, n, variant in [(P4, 6, Variant.STANDARD), (P4, 5, Variant.PROLONGER_MAY_PASS)]:
            res = solve(n, fam, variant)
            state = initial_state(n, fam, variant)
            for action in res.principal_variation:
                state = apply_action(state, action)
            assert is_terminal(state)
            assert state.graph.m == res.score

    def test_best_response_pv_replays(self):
        res = best_response(6, P4, Variant.STANDARD, make_strategy("s-p4"), Player.SHORTENER)
        state = initial_state(6, P4)
        for action in res.principal_variation:
            state = apply_action(state, action)
        assert is_terminal(state) and state.graph.m == res.score


class TestCaps:
    def test_vertex_cap(self):
        with pytest.raises(CapExceeded):
            solve(11, P4)
        with pytest.raises(CapExceeded):
            best_response(64, P4, Variant.STANDARD, make_strategy("s-p4"), Player.SHORTENER)

    def test_node_budget(self):
        with pytest.raises(BudgetExceeded) as err:
            solve(8, P5, node_cap=5)
        assert err.value.kind == "nodes"

    def test_time_budget(self):
        with pytest.raises(BudgetExceeded) as err:
            solve(8, P5, time_cap=1e-9)
        assert err.value.kind == "time"


class TestCacheFile:
    def test_roundtrip(self, tmp_path):
        path = str(tmp_path / "cache.bin")
        first = solve(6, P4, cache_path=path)
        table = load_table(path, P4, Variant.STANDARD, 6)
        assert table  # populated by the first run
        again = solve(6, P4, cache_path=path)
        assert again.score == first.score

    def test_missing_file_is_empty(self, tmp_path):
        assert load_table(str(tmp_path / "absent.bin"), P4, Variant.STANDARD, 6) == {}

    def test_mismatched_parameters_ignored(self, tmp_path):
        path = str(tmp_path / "cache.bin")
        solve(6, P4, cache_path=path)
        assert load_table(path, P5, Variant.STANDARD, 6) == {}
        assert load_table(path, P4, Variant.PROLONGER_MAY_PASS, 6) == {}
        assert load_table(path, P4, Variant.STANDARD, 7) == {}

    def test_corrupt_file_rejected(self, tmp_path):
        path = tmp_path / "bad.bin"
        path.write_bytes(b"not a cache")
        with pytest.raises(ValueError):
            load_table(str(path), P4, Variant.STANDARD, 6)


class TestBestResponsePass:
    def test_traceable_floor_example(self):
        res = best_response(
            6, P4, Variant.PROLONGER_MAY_PASS, make_strategy("traceable"), Player.PROLONGER
        )
        assert res.score >= 3  # n(k-2)/4 = 6*2/4

    def test_fixed_side_script_is_honoured(self):
        # against the scripted shortener the free value stays within her bound
        res = best_response(5, P4, Variant.STANDARD, make_strategy("s-p4"), Player.SHORTENER)
        assert res.score <= 5  # 4n/5 + 1
