import random

import pytest

from satgame.engine import (
    GameState,
    PASS,
    Action,
    Player,
    Variant,
    initial_state,
    is_terminal,
    play,
)
from satgame.families import PathFamily, StarFamily, TreeFamily, legal_moves
from satgame.graph import Graph
from satgame.strategies import make_strategy


def state(g: Graph, family, variant=Variant.STANDARD, mover=Player.PROLONGER) -> GameState:
    return GameState(g, mover, family, variant, Player.PROLONGER)


P4, P5 = PathFamily(4), PathFamily(5)


class TestTraceable:
    strat = make_strategy("traceable")

    def test_closes_path_component(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2)])
        act = self.strat(state(g, P5, Variant.PROLONGER_MAY_PASS))
        assert act == Action.play(0, 2)

    def test_passes_when_all_complete(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4)])
        act = self.strat(state(g, P4, Variant.PROLONGER_MAY_PASS))
        assert act is PASS

    def test_passes_on_empty_graph(self):
        act = self.strat(initial_state(5, P4, Variant.PROLONGER_MAY_PASS))
        assert act is PASS

    def test_standard_variant_falls_back_to_edge(self):
        act = self.strat(initial_state(5, P4, Variant.STANDARD))
        assert act == Action.play(0, 1)


class TestShortenerP4:
    strat = make_strategy("s-p4")

    def test_grows_cherry_to_three_leaf_star(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2)])  # cherry centred at 1, two spare
        act = self.strat(state(g, P4, mover=Player.SHORTENER))
        assert act == Action.play(1, 3)

    def test_draws_isolated_edge(self):
        g = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3)])  # star, two isolated
        act = self.strat(state(g, P4, mover=Player.SHORTENER))
        assert act == Action.play(4, 5)

    def test_closes_cherry_without_isolated_vertices(self):
        g = Graph.from_edges(7, [(0, 1), (1, 2), (3, 4), (3, 5), (3, 6)])
        act = self.strat(state(g, P4, mover=Player.SHORTENER))
        assert act == Action.play(0, 2)


class TestProlongerP4:
    strat = make_strategy("p-p4")

    def test_closes_cherry_into_triangle(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
        assert self.strat(state(g, P4)) == Action.play(0, 2)

    def test_forms_cherry_from_edge_and_vertex(self):
        g = Graph.from_edges(4, [(0, 1)])
        assert self.strat(state(g, P4)) == Action.play(0, 2)

    def test_first_move_is_isolated_edge(self):
        assert self.strat(initial_state(6, P4)) == Action.play(0, 1)

    def test_grows_star_when_nothing_to_close(self):
        g = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3)])
        assert self.strat(state(g, P4)) == Action.play(0, 4)


class TestShortenerP5:
    strat = make_strategy("s-p5")

    def test_extends_four_path_at_inner_vertex(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3)])
        act = self.strat(state(g, P5, mover=Player.SHORTENER))
        assert act == Action.play(1, 4)

    def test_extends_isolated_edge_before_drawing_one(self):
        g = Graph.from_edges(4, [(0, 1)])
        act = self.strat(state(g, P5, mover=Player.SHORTENER))
        assert act == Action.play(0, 2)

    def test_attaches_to_big_component_at_legal_spot(self):
        # pendant triangle with two pendants at vertex 0; only 0 accepts another
        g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4)])
        act = self.strat(state(g, P5, mover=Player.SHORTENER))
        assert act == Action.play(0, 5)

    def test_joins_isolated_edges_when_no_spare_vertices(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        act = self.strat(state(g, P5, mover=Player.SHORTENER))
        assert act == Action.play(0, 2)


class TestProlongerP5:
    strat = make_strategy("p-p5")

    def test_closes_three_leaf_star(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        assert self.strat(state(g, P5)) == Action.play(1, 2)

    def test_joins_two_isolated_edges(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert self.strat(state(g, P5)) == Action.play(0, 2)

    def test_completes_triangle_in_four_path(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        assert self.strat(state(g, P5)) == Action.play(0, 2)

    def test_closes_double_star_pendant_to_far_centre(self):
        # centres 1-2; pendant 0 at 1; pendants 3,4 at 2
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (2, 4)])
        assert self.strat(state(g, P5)) == Action.play(0, 2)


class TestProlongerTrees:
    strat = make_strategy("p-trees")

    def test_joins_largest_pair_under_budget(self):
        # components {0,1,2}, {3,4}, {5,6}, {7}, {8}; budget 5
        g = Graph.from_edges(9, [(0, 1), (1, 2), (3, 4), (5, 6)])
        act = self.strat(state(g, TreeFamily(6)))
        assert act == Action.play(0, 3)

    def test_joins_singletons_when_big_components_full(self):
        g = Graph.from_edges(8, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        act = self.strat(state(g, TreeFamily(4)))
        assert act == Action.play(6, 7)

    def test_intra_component_fallback(self):
        # two paths of 3; any join reaches 6 > budget 3; falls back inside
        g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
        act = self.strat(state(g, TreeFamily(4)))
        assert act == Action.play(0, 2)


class TestStarLex:
    strat = make_strategy("p-star")

    def test_prefers_low_degree_pair(self):
        g = Graph.from_edges(4, [(2, 3)])
        assert self.strat(state(g, StarFamily(3))) == Action.play(0, 1)

    def test_empty_graph_least_edge(self):
        assert self.strat(initial_state(6, StarFamily(3))) == Action.play(0, 1)

    def test_min_degree_clique_reaches_up(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)])
        assert self.strat(state(g, StarFamily(4))) == Action.play(0, 3)


class TestBaselines:
    def test_random_is_reproducible(self):
        s = initial_state(8, P4)
        a = make_strategy("random:7")(s)
        b = make_strategy("random:7")(s)
        assert a == b
        rec1 = play(10, P4, strategy_p=make_strategy("random:3"), strategy_s=make_strategy("random:4"))
        rec2 = play(10, P4, strategy_p=make_strategy("random:3"), strategy_s=make_strategy("random:4"))
        assert rec1 == rec2

    def test_greedy_min_on_empty(self):
        assert make_strategy("greedy-min")(initial_state(4, P4)) == Action.play(0, 1)

    def test_greedy_max_joins_components(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        act = make_strategy("greedy-max")(state(g, P5))
        assert act == Action.play(0, 2)

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError):
            make_strategy("does-not-exist")


class TestOptimalStrategy:
    def test_optimal_pair_matches_solver(self):
        from satgame.solver import solve

        rec = play(5, P4, strategy_p=make_strategy("optimal"), strategy_s=make_strategy("optimal"))
        assert rec.score == solve(5, P4).score


class TestLegalityFuzz:
    NAMES = ("traceable", "s-p4", "p-p4", "s-p5", "p-p5", "p-trees", "p-star",
             "greedy-min", "greedy-max")

    def test_every_strategy_stays_legal(self):
        rng = random.Random(99)
        families = {
            "traceable": lambda: PathFamily(rng.choice((4, 5))),
            "s-p4": lambda: PathFamily(4),
            "p-p4": lambda: PathFamily(4),
            "s-p5": lambda: PathFamily(5),
            "p-p5": lambda: PathFamily(5),
            "p-trees": lambda: TreeFamily(rng.choice((3, 4, 5))),
            "p-star": lambda: StarFamily(rng.choice((3, 4))),
            "greedy-min": lambda: PathFamily(5),
            "greedy-max": lambda: TreeFamily(4),
        }
        for name in self.NAMES:
            for _ in range(12):
                n = rng.randint(4, 16)
                fam = families[name]()
                variant = (
                    Variant.PROLONGER_MAY_PASS if name == "traceable" else Variant.STANDARD
                )
                opp = make_strategy(f"random:{rng.randint(0, 999)}")
                strat = make_strategy(name)
                if name.startswith("s-"):
                    rec = play(n, fam, variant, Player.PROLONGER, opp, strat)
                else:
                    rec = play(n, fam, variant, Player.SHORTENER, strat, opp)
                # play() itself validates legality; double-check the terminal state
                assert legal_moves(rec.terminal, fam) == []
