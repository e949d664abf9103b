# coding=utf-8
import unittest

from endspace.AnswerCache import AnswerCache
from endspace.Cuts import engine, RaySpec
from endspace.catalog import load


class TestAnswerCache(unittest.TestCase):

    def setUp(self):
        self.cache = AnswerCache()
        self.cache.add_dataset('edge_cut', ['a', 'b', 'removed'])
        self.cache.put('edge_cut', {'a': 'c:a', 'b': '~g:A', 'removed': '', 'answer': 'Infinite'})
        self.cache.put('edge_cut', {'a': 'c:a', 'b': '~g:B', 'removed': '', 'answer': 1})

    def test_get(self):
        assert self.cache.get('edge_cut', a='c:a', b='~g:B', removed='')['answer'] == 1
        assert self.cache.get('edge_cut', a='c:a', b='~g:C', removed='') is None
        assert self.cache.get('unknown', a='c:a') is None

    def test_missing_key_field(self):
        with self.assertRaises(KeyError):
            self.cache.get('edge_cut', a='c:a')

    def test_remember_computes_once(self):
        calls = []

        def compute():
            calls.append(1)
            return 42

        assert self.cache.remember('depth', compute, presentation='p', depth=3) == 42
        assert self.cache.remember('depth', compute, presentation='p', depth=3) == 42
        assert len(calls) == 1
        assert len(self.cache) == 3

    def test_cut_answers_are_memoized(self):
        e = engine(load('double_ray_dominator'))
        first = e.domination_cut('c:hub', RaySpec('g:r1'))
        assert e.domination_cut('c:hub', RaySpec('g:r1')) is first
        assert e.cache.get('domination_cut', vertex='c:hub', tail='g:r1')['answer'] is first
        cut = e.sim_E_cut('c:hub', 'c:hub')
        assert e.sim_E_cut('c:hub', 'c:hub') is cut


if __name__ == '__main__':
    unittest.main()
