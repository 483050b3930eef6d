import gzip
import os
from unittest import TestCase

from joblib import delayed

from domset_tools import utils

from . import mixins


class TestUtils(mixins.TestMixin, TestCase):

    def test_parallel_with_progress(self):
        self.assertEqual([0, 1, 4],
                         utils.ParallelWithProgress(total=3, disable=True)(
                             delayed(pow)(i, 2) for i in range(3)
                         ))

    def test_parallel_with_progress_threads(self):
        self.assertEqual([1, 2, 3, 4],
                         utils.ParallelWithProgress(
                             n_jobs=2,
                             backend='threading',
                             total=4,
                             disable=True
                         )(delayed(abs)(-i) for i in range(1, 5)))

    def test_clean_name(self):
        self.assertEqual('edgelist', utils.clean_name('Edge-List'))
        self.assertEqual('includeinsolution',
                         utils.clean_name('include_in solution'))

    def test_resolve_name(self):
        aliases = {'seq': 'sequential', 'sequential': 'sequential'}
        self.assertEqual(
            'sequential', utils.resolve_name('SEQ', aliases, 'mode')
        )
        with self.assertRaisesRegex(utils.UtilsError, 'Unknown mode'):
            utils.resolve_name('parallel', aliases, 'mode')

    def test_is_gzip(self):
        self.assertTrue(utils.is_gzip(self.p5_gz_path))
        self.assertFalse(utils.is_gzip(self.p5_path))
        self.assertTrue(
            utils.is_gzip(os.path.join(self.temp_dir, 'new.txt.gz'))
        )

    def test_open_as_text(self):
        with utils.open_as_text(self.p5_gz_path, 'r') as f:
            self.assertEqual(
                '# Undirected graph: path on 5 nodes\n', f.readline()
            )

    def test_json(self):
        path = os.path.join(self.temp_dir, 'data.json')
        self.assertEqual(path, utils.write_json({'a': [1, 2]}, path))
        self.assertEqual({'a': [1, 2]}, utils.read_json(path))

    def test_json_gzip(self):
        path = os.path.join(self.temp_dir, 'data.json.gz')
        utils.write_json({'a': 1}, path, indent=2)
        with gzip.open(path, 'rt') as f:
            self.assertIn('"a": 1', f.read())
        self.assertEqual({'a': 1}, utils.read_json(path))

    def test_write_json_error(self):
        with self.assertRaises(utils.UtilsError):
            utils.write_json({}, os.path.join(self.temp_dir, 'no', 'a.json'))
