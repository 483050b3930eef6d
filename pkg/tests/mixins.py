import os
import shutil
import tempfile
from unittest import TestCase, mock

import networkx as nx
import numpy as np

from domset_tools.graph import Graph


def tqdm_mock(*args, **kwargs):
    if len(args) > 0:
        iterable = args[0]
        try:
            iter(iterable)
        except TypeError:
            return mock.MagicMock()
        return iterable
    return mock.MagicMock()


def dummy_function(*args, **kwargs):
    return mock.MagicMock()


def files_equal(file1, file2):
    with open(file1, 'r') as f1, open(file2, 'r') as f2:
        return f1.read() == f2.read()


def from_networkx(G):
    """Graph with node ids in the order of ``G.nodes``."""
    index = {node: i for i, node in enumerate(G.nodes)}
    return Graph.from_edges(
        len(index), [(index[u], index[v]) for u, v in G.edges]
    )


def random_graph(n, n_edges, seed):
    """Random multigraph edges on ``n`` nodes, normalized. May contain
    isolated vertices."""
    rng = np.random.default_rng(seed)
    return Graph.from_edges(n, rng.integers(0, n, size=(n_edges, 2)))


def random_connected_graph(n, p, seed):
    """Random connected graph: a random spanning tree plus G(n, p) edges."""
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    tree = [(order[i], order[rng.integers(0, i)]) for i in range(1, n)]
    extra = nx.gnp_random_graph(n, p, seed=int(seed)).edges
    return Graph.from_edges(n, tree + list(extra))


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def spider_graph():
    """Center 0 with three legs of length 2: 0-1-2, 0-3-4 and 0-5-6."""
    return Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])


class TestMixin(TestCase):

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    @classmethod
    def setUpClass(cls):
        cls.base_dir = os.path.dirname(os.path.abspath(__file__))
        cls.fixtures_dir = os.path.join(cls.base_dir, 'fixtures')

        cls.graphs_dir = os.path.join(cls.fixtures_dir, 'graphs')
        cls.p5_path = os.path.join(cls.graphs_dir, 'p5.txt')
        cls.p5_gz_path = os.path.join(cls.graphs_dir, 'p5.txt.gz')
        cls.p5_mtx_path = os.path.join(cls.graphs_dir, 'p5.mtx')
        cls.p5_general_mtx_path = os.path.join(
            cls.graphs_dir, 'p5_general.mtx'
        )
        cls.p5_dimacs_path = os.path.join(cls.graphs_dir, 'p5.dimacs')
        cls.duplicates_path = os.path.join(cls.graphs_dir, 'duplicates.txt')
        cls.self_loop_path = os.path.join(cls.graphs_dir, 'self_loop.txt')
        cls.isolated_path = os.path.join(cls.graphs_dir, 'isolated.txt')
        cls.directed_path = os.path.join(cls.graphs_dir, 'directed.txt')
        cls.bad_path = os.path.join(cls.graphs_dir, 'bad.txt')

        cls.dynamic_dir = os.path.join(cls.fixtures_dir, 'dynamic')
        cls.updates_path = os.path.join(cls.dynamic_dir, 'p5.ups')

        cls.setcover_dir = os.path.join(cls.fixtures_dir, 'setcover')
        cls.containment_path = os.path.join(
            cls.setcover_dir, 'containment.txt'
        )
        cls.setcover_example_path = os.path.join(
            cls.setcover_dir, 'example.txt'
        )

        cls.bench_dir = os.path.join(cls.fixtures_dir, 'bench')
        cls.bench_path = os.path.join(cls.bench_dir, 'p5.toml')
        cls.bench_missing_path = os.path.join(cls.bench_dir, 'missing.toml')
