import os
from unittest import TestCase

import numpy as np
from scipy.sparse.csgraph import shortest_path

from domset_tools import graph

from . import mixins


class TestGraph(mixins.TestMixin, TestCase):

    def test_from_edges(self):
        g = graph.Graph.from_edges(4, [(0, 1), (1, 0), (1, 2), (2, 2), (3, 1)])
        self.assertEqual(4, g.n)
        self.assertEqual(3, g.m_edges)
        np.testing.assert_array_equal([0, 2, 3], g.neighbors(1))
        np.testing.assert_array_equal([1, 3, 1, 1], g.degrees)

    def test_from_edges_out_of_range(self):
        with self.assertRaises(graph.GraphError):
            graph.Graph.from_edges(2, [(0, 2)])

    def test_invariants(self):
        g = mixins.random_graph(50, 200, 0)
        adjacency = g.to_scipy()
        self.assertEqual(0, (adjacency != adjacency.T).nnz)
        self.assertEqual(2 * g.m_edges, g.degrees.sum())
        self.assertFalse(adjacency.diagonal().any())
        for v in range(g.n):
            neighbors = g.neighbors(v)
            self.assertTrue((np.diff(neighbors) > 0).all())
            self.assertEqual(len(neighbors), graph.degree(g, v))

    def test_immutable(self):
        g = mixins.path_graph(3)
        with self.assertRaises(ValueError):
            g.indices[0] = 2

    def test_labels(self):
        g = graph.Graph.from_edges(2, [(0, 1)], labels=['a', 'b'])
        self.assertEqual('b', g.label_of(1))
        self.assertEqual(0, g.id_of('a'))
        with self.assertRaises(graph.GraphError):
            g.id_of('c')
        with self.assertRaises(graph.GraphError):
            graph.Graph.from_edges(2, [(0, 1)], labels=['a'])

    def test_edges(self):
        g = graph.Graph.from_edges(3, [(2, 0), (1, 0)])
        np.testing.assert_array_equal([[0, 1], [0, 2]], g.edges())


class TestLoadOptions(mixins.TestMixin, TestCase):

    def test_aliases(self):
        self.assertEqual('edgelist', graph.LoadOptions('Edge-List').format)
        self.assertEqual('edgelist', graph.LoadOptions('snap').format)
        self.assertEqual('dimacs', graph.LoadOptions('dimacs-like').format)
        self.assertEqual(
            'mtx',
            graph.LoadOptions('matrix-market-pattern').format
        )

    def test_unknown_format(self):
        with self.assertRaises(graph.LoadOptionsError):
            graph.LoadOptions('graphml')

    def test_empty_comment_prefixes(self):
        with self.assertRaises(graph.LoadOptionsError):
            graph.LoadOptions(comment_prefixes='')

    def test_infer(self):
        self.assertEqual('mtx', graph.LoadOptions.infer('a/b.mtx.gz').format)
        self.assertEqual('dimacs', graph.LoadOptions.infer('b.gr').format)
        self.assertEqual('edgelist', graph.LoadOptions.infer('b.txt').format)
        self.assertFalse(
            graph.LoadOptions.infer(
                'b.txt', treat_directed_as_undirected=False
            ).treat_directed_as_undirected
        )


class TestLoadGraph(mixins.TestMixin, TestCase):

    def test_load_edgelist(self):
        g = graph.load_graph(self.p5_path)
        self.assertEqual(5, g.n)
        self.assertEqual(4, g.m_edges)
        self.assertEqual(('1', '2', '3', '4', '5'), g.labels)
        self.assertEqual(1, graph.degree(g, 0))
        self.assertEqual(2, graph.degree(g, 2))

    def test_load_duplicates(self):
        g, stats = graph.load_graph_with_stats(self.duplicates_path)
        self.assertEqual(3, g.n)
        self.assertEqual(3, g.m_edges)
        self.assertEqual(4, stats.edges_read)
        self.assertEqual(1, stats.duplicate_edges)
        self.assertEqual(0, stats.self_loops)

    def test_load_self_loop(self):
        g, stats = graph.load_graph_with_stats(self.self_loop_path)
        self.assertEqual(2, g.n)
        self.assertEqual(1, g.m_edges)
        self.assertEqual(1, stats.self_loops)
        self.assertEqual(('5', '6'), g.labels)

    def test_load_only_self_loop(self):
        path = os.path.join(self.temp_dir, 'loop.txt')
        with open(path, 'w') as f:
            f.write('5 5\n')
        g = graph.load_graph(path)
        self.assertEqual(1, g.n)
        np.testing.assert_array_equal([0], graph.isolated_vertices(g))

    def test_load_isolated(self):
        g = graph.load_graph(self.isolated_path)
        self.assertEqual(3, g.n)
        isolated = graph.isolated_vertices(g)
        self.assertEqual(['3'], [g.labels[v] for v in isolated])

    def test_load_mtx(self):
        g = graph.load_graph(self.p5_mtx_path)
        self.assertEqual(graph.load_graph(self.p5_path), g)

    def test_load_dimacs(self):
        g = graph.load_graph(self.p5_dimacs_path)
        self.assertEqual(graph.load_graph(self.p5_path), g)

    def test_load_gzip(self):
        self.assertEqual(
            graph.load_graph(self.p5_path), graph.load_graph(self.p5_gz_path)
        )

    def test_load_idempotent(self):
        self.assertEqual(
            graph.load_graph(self.duplicates_path),
            graph.load_graph(self.duplicates_path)
        )

    def test_load_general_mtx_symmetrized(self):
        g, stats = graph.load_graph_with_stats(self.p5_general_mtx_path)
        self.assertTrue(stats.symmetrized)
        self.assertEqual(graph.load_graph(self.p5_path), g)

    def test_load_general_mtx_rejected(self):
        opts = graph.LoadOptions('mtx', treat_directed_as_undirected=False)
        with self.assertRaises(graph.GraphError):
            graph.load_graph(self.p5_general_mtx_path, opts)

    def test_load_directed_snap_rejected(self):
        opts = graph.LoadOptions(treat_directed_as_undirected=False)
        with self.assertRaises(graph.GraphError):
            graph.load_graph(self.directed_path, opts)
        self.assertEqual(3, graph.load_graph(self.directed_path).m_edges)

    def test_load_undirected_snap_accepted(self):
        opts = graph.LoadOptions(treat_directed_as_undirected=False)
        self.assertEqual(5, graph.load_graph(self.p5_path, opts).n)

    def test_load_parse_error(self):
        with self.assertRaisesRegex(graph.GraphFileError, 'line 2'):
            graph.load_graph(self.bad_path)

    def test_load_dimacs_out_of_range(self):
        path = os.path.join(self.temp_dir, 'bad.dimacs')
        with open(path, 'w') as f:
            f.write('p edge 2 1\ne 1 3\n')
        with self.assertRaisesRegex(graph.GraphFileError, 'line 2'):
            graph.load_graph(path)

    def test_load_empty(self):
        path = os.path.join(self.temp_dir, 'empty.txt')
        with open(path, 'w') as f:
            f.write('# nothing here\n')
        with self.assertRaises(graph.GraphError):
            graph.load_graph(path)

    def test_write_dimacs(self):
        g = graph.load_graph(self.p5_path)
        path = os.path.join(self.temp_dir, 'p5.dimacs')
        self.assertEqual(path, graph.write_graph(g, path))
        with open(path, 'r') as f:
            self.assertEqual(
                'p edge 5 4\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n', f.read()
            )
        self.assertEqual(g, graph.load_graph(path))

    def test_write_mtx(self):
        g = graph.load_graph(self.p5_path)
        path = os.path.join(self.temp_dir, 'p5.mtx')
        graph.write_graph(g, path)
        self.assertEqual(g, graph.load_graph(path))

    def test_write_edgelist_keeps_isolated(self):
        g = graph.load_graph(self.isolated_path)
        path = os.path.join(self.temp_dir, 'isolated.txt.gz')
        graph.write_graph(g, path)
        loaded = graph.load_graph(path)
        self.assertEqual(3, loaded.n)
        self.assertEqual(['3'], [
            loaded.labels[v] for v in graph.isolated_vertices(loaded)
        ])


class TestTraversal(mixins.TestMixin, TestCase):

    def test_khop_path(self):
        g = mixins.path_graph(5)
        np.testing.assert_array_equal([1, 2], graph.khop_neighbors(g, 0, 2))
        np.testing.assert_array_equal([1, 3], graph.khop_neighbors(g, 2, 1))

    def test_khop_spider(self):
        g = mixins.spider_graph()
        np.testing.assert_array_equal(
            [1, 2, 3, 4, 5, 6], graph.khop_neighbors(g, 0, 2)
        )

    def test_khop_one_is_adjacency(self):
        g = mixins.random_graph(30, 60, 1)
        for v in range(g.n):
            np.testing.assert_array_equal(
                g.neighbors(v), graph.khop_neighbors(g, v, 1)
            )

    def test_khop_invalid(self):
        g = mixins.path_graph(3)
        with self.assertRaises(graph.GraphError):
            graph.khop_neighbors(g, 0, 0)
        with self.assertRaises(graph.GraphError):
            graph.khop_neighbors(g, 3, 2)

    def test_khop_matches_distances(self):
        for seed in range(5):
            g = mixins.random_graph(60, 90, seed)
            distances = shortest_path(g.to_scipy(), unweighted=True)
            for k in (2, 3):
                for v in range(g.n):
                    expected = np.flatnonzero(distances[v] <= k)
                    expected = expected[expected != v]
                    result = graph.khop_neighbors(g, v, k)
                    np.testing.assert_array_equal(expected, result)
                    self.assertTrue(
                        set(result) <= set(graph.khop_neighbors(g, v, k + 1))
                    )

    def test_ball_sizes(self):
        g = mixins.spider_graph()
        np.testing.assert_array_equal(
            [6, 4, 2, 4, 2, 4, 2],
            graph.traversal.ball_sizes(g.indptr, g.indices, 2)
        )
