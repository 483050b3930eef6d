import os
from unittest import TestCase

import numpy as np

from domset_tools import dynamic, engine, graph, oracles

from . import mixins


class TestDynamicState(mixins.TestMixin, TestCase):

    def assertMatchesScratch(self, state):
        config = state.config.replace(isolated_policy='include', m=0)
        np.testing.assert_array_equal(
            engine.solve(state.snapshot(), config).marked, state.marked
        )

    def test_initial(self):
        g = graph.load_graph(self.p5_path)
        state = dynamic.DynamicState(g, engine.RunConfig(seed=1))
        self.assertTrue(state.incremental)
        self.assertEqual(5, state.n)
        self.assertEqual(4, state.m_edges)
        np.testing.assert_array_equal([1, 2, 3], state.marked)
        np.testing.assert_array_equal(
            engine.assign_tags(g, 1), state.tags
        )

    def test_insert_and_delete(self):
        g = graph.load_graph(self.p5_path)
        state = dynamic.DynamicState.from_graph(g, engine.RunConfig(seed=2))
        state.apply_edge('insert', '1', '5')
        self.assertEqual(5, state.m_edges)
        self.assertEqual({0, 1, 3, 4}, state.last_affected)
        self.assertMatchesScratch(state)

        state.apply_edge('delete', '1', '5')
        self.assertEqual(4, state.m_edges)
        self.assertEqual({0, 1, 3, 4}, state.last_affected)
        np.testing.assert_array_equal([1, 2, 3], state.marked)

    def test_insert_new_node(self):
        g = graph.load_graph(self.p5_path)
        state = dynamic.DynamicState(g, engine.RunConfig(seed=3))
        dynamic.apply_edge(state, 'insert', '5', '6')
        self.assertEqual(6, state.n)
        self.assertEqual('6', state.labels[5])
        self.assertEqual(5, state.id_of('6'))
        self.assertEqual(
            engine.marking.tags_for_range(3, 5, 6)[0], state.tags[5]
        )
        np.testing.assert_array_equal([1, 2, 3, 4], state.marked)
        self.assertMatchesScratch(state)

    def test_matches_scratch(self):
        rng = np.random.default_rng(0)
        for seed in range(3):
            g = mixins.random_connected_graph(30, 0.1, seed)
            state = dynamic.DynamicState(
                g, engine.RunConfig(seed=seed, isolated_policy='include')
            )
            for _ in range(60):
                u, v = (str(x) for x in rng.choice(35, size=2, replace=False))
                known = u in state.labels and v in state.labels
                before = state.choices
                if known and state.id_of(v) in state.snapshot().neighbors(
                        state.id_of(u)):
                    state.apply_edge('delete', u, v)
                else:
                    state.apply_edge('insert', u, v)
                self.assertMatchesScratch(state)
                after = state.choices[:before.size]
                changed = set(np.flatnonzero(before != after).tolist())
                self.assertLessEqual(changed, state.last_affected)
                self.assertTrue(
                    oracles.is_total_dominating(
                        state.snapshot(), state.marked, ignore_isolated=True
                    )
                )

    def test_matches_scratch_large(self):
        g = mixins.random_connected_graph(500, 0.01, 9)
        state = dynamic.DynamicState(
            g, engine.RunConfig(seed=9, isolated_policy='include')
        )
        rng = np.random.default_rng(9)
        for _ in range(200):
            u, v = (str(x) for x in rng.choice(500, size=2, replace=False))
            neighbors = state.snapshot().neighbors(state.id_of(u))
            if state.id_of(v) in neighbors:
                state.apply_edge('delete', u, v)
            else:
                state.apply_edge('insert', u, v)
            self.assertMatchesScratch(state)
        self.assertEqual(500, state.n)

    def test_errors_leave_state_unchanged(self):
        g = graph.load_graph(self.p5_path)
        state = dynamic.DynamicState(g)
        marked = state.marked
        with self.assertRaises(dynamic.DynamicError):
            state.apply_edge('insert', '1', '2')
        with self.assertRaises(dynamic.DynamicError):
            state.apply_edge('delete', '1', '3')
        with self.assertRaises(dynamic.DynamicError):
            state.apply_edge('insert', '1', '1')
        with self.assertRaises(dynamic.DynamicError):
            state.apply_edge('delete', '1', '9')
        with self.assertRaises(dynamic.DynamicError):
            state.apply_edge('flip', '1', '2')
        with self.assertRaisesRegex(dynamic.DynamicError, 'isolate'):
            state.apply_edge('delete', '1', '2')
        self.assertEqual(4, state.m_edges)
        np.testing.assert_array_equal(marked, state.marked)

    def test_delete_isolates_with_include(self):
        g = graph.load_graph(self.p5_path)
        state = dynamic.DynamicState(
            g, engine.RunConfig(isolated_policy='include')
        )
        state.apply_edge('delete', '1', '2')
        np.testing.assert_array_equal([0, 2, 3], state.marked)
        self.assertEqual(-1, state.choices[0])
        self.assertMatchesScratch(state)

    def test_recompute(self):
        g = graph.load_graph(self.p5_path)
        state = dynamic.DynamicState(g, engine.RunConfig(seed=4, m=2))
        self.assertFalse(state.incremental)
        with self.assertRaises(dynamic.DynamicError):
            state.choices
        state.apply_edge('insert', '1', '5')
        np.testing.assert_array_equal(
            engine.solve(state.snapshot(), engine.RunConfig(seed=4, m=2)).marked,
            state.marked
        )
        self.assertEqual(set(range(5)), state.last_affected)


class TestUpdates(mixins.TestMixin, TestCase):

    def test_read_updates(self):
        updates = dynamic.read_updates(self.updates_path)
        self.assertEqual([
            dynamic.Update('insert', '1', '5', 2),
            dynamic.Update('delete', '1', '5', 3),
            dynamic.Update('insert', '5', '6', 4),
            dynamic.Update('delete', '2', '3', 5),
        ], updates)

    def test_read_updates_error(self):
        path = os.path.join(self.temp_dir, 'bad.ups')
        with open(path, 'w') as f:
            f.write('+ 1 2\n* 1 2\n')
        with self.assertRaisesRegex(dynamic.DynamicError, 'line 2'):
            dynamic.read_updates(path)

    def test_replay(self):
        g = graph.load_graph(self.p5_path)
        state = dynamic.DynamicState(g, engine.RunConfig(seed=5))
        rows = list(
            dynamic.replay_updates(state, dynamic.read_updates(self.updates_path))
        )
        self.assertEqual([0, 1, 2, 3, 4], [row.step for row in rows])
        self.assertEqual(dynamic.ReplayRow(0, None, None, None, 5, 4, 3, 0),
                         rows[0])
        self.assertEqual([5, 5, 6, 6], [row.n for row in rows[1:]])
        self.assertEqual([5, 4, 5, 4], [row.m_edges for row in rows[1:]])
        self.assertEqual(3, rows[2].size)
        self.assertEqual(4, rows[3].size)
        self.assertEqual(state.marked.size, rows[-1].size)

    def test_replay_error(self):
        g = graph.load_graph(self.p5_path)
        state = dynamic.DynamicState(g)
        updates = [
            dynamic.Update('insert', '1', '3', 1),
            dynamic.Update('insert', '1', '3', 7),
        ]
        with self.assertRaisesRegex(dynamic.DynamicError, 'line 7'):
            list(dynamic.replay_updates(state, updates))
