from unittest import TestCase

import networkx as nx
import numpy as np

from domset_tools import engine, graph, kdistance, oracles

from . import mixins


class TestPowerGraph(TestCase):

    def test_path(self):
        g = mixins.path_graph(5)
        power = kdistance.power_graph(g, 2)
        np.testing.assert_array_equal(
            [[0, 1], [0, 2], [1, 2], [1, 3], [2, 3], [2, 4], [3, 4]],
            power.edges()
        )
        self.assertEqual(g.labels, power.labels)

    def test_cycle(self):
        g = mixins.from_networkx(nx.cycle_graph(6))
        self.assertEqual(12, kdistance.power_graph(g, 2).m_edges)
        self.assertEqual(15, kdistance.power_graph(g, 3).m_edges)

    def test_one_is_identity(self):
        g = mixins.spider_graph()
        self.assertIs(g, kdistance.power_graph(g, 1))

    def test_budget(self):
        g = mixins.path_graph(5)
        with self.assertRaises(kdistance.KDistanceError):
            kdistance.power_graph(g, 2, max_edges=6)
        self.assertEqual(7, kdistance.power_graph(g, 2, max_edges=7).m_edges)

    def test_invalid(self):
        with self.assertRaises(kdistance.KDistanceError):
            kdistance.power_graph(mixins.path_graph(3), 0)


class TestKConfig(TestCase):

    def test_invalid(self):
        with self.assertRaises(kdistance.KDistanceError):
            kdistance.KConfig(k=0)
        with self.assertRaises(kdistance.KDistanceError):
            kdistance.KConfig(k=2, max_edges=-1)

    def test_materialize(self):
        g = mixins.path_graph(5)
        self.assertTrue(kdistance.KConfig(k=2).materialize(g))
        self.assertFalse(
            kdistance.KConfig(k=2, materialize_power_graph=False).materialize(g)
        )

    def test_materialize_measures_power_graph(self):
        g = mixins.from_networkx(nx.star_graph(2000))
        self.assertEqual(2000, g.m_edges)
        self.assertEqual(2001000, kdistance.power_edges(g, 2))
        self.assertFalse(kdistance.KConfig(k=2).materialize(g))
        self.assertTrue(kdistance.KConfig(k=1).materialize(g))
        self.assertTrue(
            kdistance.KConfig(k=2, materialize_power_graph=True).materialize(g)
        )

    def test_materialize_within_budget(self):
        g = mixins.path_graph(5)
        self.assertTrue(kdistance.KConfig(k=2, max_edges=7).materialize(g))
        self.assertFalse(kdistance.KConfig(k=2, max_edges=6).materialize(g))


class TestSolveKDistance(TestCase):

    def test_k1_matches_solve(self):
        g = mixins.random_connected_graph(50, 0.1, 0)
        config = engine.RunConfig(seed=5, m=2)
        np.testing.assert_array_equal(
            engine.solve(g, config).marked,
            kdistance.solve_kdistance(g, kdistance.KConfig(base=config)).marked
        )

    def test_falls_back_over_budget(self):
        g = mixins.from_networkx(nx.star_graph(40))
        base = engine.RunConfig(seed=3, m=1)
        automatic = kdistance.solve_kdistance(
            g, kdistance.KConfig(k=2, base=base, max_edges=10)
        )
        np.testing.assert_array_equal(
            kdistance.solve_kdistance(
                g,
                kdistance.KConfig(k=2, base=base, materialize_power_graph=True)
            ).marked, automatic.marked
        )
        self.assertTrue(
            oracles.is_k_dominating(g, automatic.marked, 2, total=True)
        )
        with self.assertRaises(kdistance.KDistanceError):
            kdistance.solve_kdistance(
                g,
                kdistance.KConfig(
                    k=2,
                    base=base,
                    materialize_power_graph=True,
                    max_edges=10
                )
            )

    def test_k1_matches_solve_many(self):
        for seed in range(50):
            g = mixins.random_connected_graph(40, 0.08, seed)
            for m in (0, 2):
                config = engine.RunConfig(seed=seed, m=m)
                np.testing.assert_array_equal(
                    engine.solve(g, config).marked,
                    kdistance.solve_kdistance(
                        g, kdistance.KConfig(base=config)
                    ).marked
                )

    def test_spider(self):
        g = mixins.spider_graph()
        for seed in range(10):
            solution = kdistance.solve_kdistance(
                g, kdistance.KConfig(k=2, base=engine.RunConfig(seed=seed))
            )
            self.assertEqual(2, solution.size)
            self.assertIn(0, solution.marked)
            self.assertEqual(2, solution.k_used)
            self.assertEqual(4, solution.rounds)

    def test_materialized_matches_on_the_fly(self):
        for seed in range(5):
            g = mixins.random_connected_graph(60, 0.04, seed)
            for k in (2, 3):
                for m in (0, 2):
                    base = engine.RunConfig(seed=seed, m=m)
                    materialized = kdistance.solve_kdistance(
                        g,
                        kdistance.KConfig(
                            k=k, base=base, materialize_power_graph=True
                        )
                    )
                    on_the_fly = kdistance.solve_kdistance(
                        g,
                        kdistance.KConfig(
                            k=k, base=base, materialize_power_graph=False
                        )
                    )
                    np.testing.assert_array_equal(
                        materialized.marked, on_the_fly.marked
                    )
                    self.assertEqual(k * (2 + m), materialized.rounds)
                    self.assertTrue(
                        oracles.is_k_dominating(
                            g, materialized.marked, k, total=True
                        )
                    )

    def test_matches_power_graph_solve(self):
        g = mixins.random_connected_graph(40, 0.05, 1)
        base = engine.RunConfig(seed=1, m=1)
        np.testing.assert_array_equal(
            engine.solve(kdistance.power_graph(g, 2), base).marked,
            kdistance.solve_kdistance(
                g, kdistance.KConfig(k=2, base=base)
            ).marked
        )

    def test_threads(self):
        g = mixins.random_connected_graph(200, 0.02, 2)
        base = engine.RunConfig(seed=2, m=1)
        np.testing.assert_array_equal(
            kdistance.solve_kdistance(
                g,
                kdistance.KConfig(
                    k=2, base=base, materialize_power_graph=False
                )
            ).marked,
            kdistance.solve_kdistance(
                g,
                kdistance.KConfig(
                    k=2,
                    base=base.replace(n_threads=4),
                    materialize_power_graph=False
                )
            ).marked
        )

    def test_simulation(self):
        for seed in range(3):
            g = mixins.random_connected_graph(30, 0.06, seed)
            for m in (0, 1):
                base = engine.RunConfig(seed=seed, m=m)
                solution, trace = engine.simulate_rounds(g, base, k=2)
                np.testing.assert_array_equal(
                    kdistance.solve_kdistance(
                        g, kdistance.KConfig(k=2, base=base)
                    ).marked, solution.marked
                )
                self.assertEqual(2 * (2 + m), solution.rounds)
                self.assertGreater(trace.messages_by_kind()['discover'], 0)
                np.testing.assert_array_equal(
                    solution.marked,
                    kdistance.solve_kdistance(
                        g,
                        kdistance.KConfig(
                            k=2, base=base.replace(mode='sim')
                        )
                    ).marked
                )

    def test_isolated(self):
        g = graph.Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4)])
        with self.assertRaises(engine.IsolatedVertexError):
            kdistance.solve_kdistance(g, kdistance.KConfig(k=2))
        base = engine.RunConfig(isolated_policy='include')
        solution = kdistance.solve_kdistance(
            g, kdistance.KConfig(k=2, base=base)
        )
        self.assertTrue(
            oracles.is_k_dominating(
                g, solution.marked, 2, total=True, ignore_isolated=True
            )
        )
        self.assertIn(5, solution.marked)
