# coding=utf-8
import os
import unittest

from endspace.FiniteGraph import SchemaError, UnresolvedRef
from endspace.Oracle import Oracle, Query, Unstable, COMPONENTS, CUT, SAME_COMPONENT, RAYLESS, OMEGA, INFINITE, \
    build_query_matrix, catalog_query_matrix, run_differential, stabilized
from endspace.Separation import Separator, VERTEX_SET
from endspace.catalog import load


class TestStabilization(unittest.TestCase):
    """Brute-force answers read off windows of truncations"""

    def setUp(self):
        self.oracle = Oracle(max_depth=16)

    def test_disjoint_rays_never_meet(self):
        p = load('omega_rays')
        answer = self.oracle.stabilized(Query(SAME_COMPONENT, p.name, a='f:R:0:0', b='f:R:1:0'), p)
        assert answer.value is False
        assert answer.depth == 2
        assert answer.detected is None
        assert answer.caveat

    def test_dominated_tail_cut_is_infinite(self):
        p = load('double_ray_dominator')
        answer = self.oracle.stabilized(Query(CUT, p.name, a='c:hub', tail='g:r1'), p)
        assert answer.value == INFINITE
        assert answer.detected == 'Infinite'
        assert answer.values[:3] == [2, 3, 4]

    def test_star_components_read_as_omega(self):
        p = load('star_of_rays')
        q = Query(COMPONENTS, p.name, Separator(VERTEX_SET, ['c:c']))
        answer = self.oracle.stabilized(q, p)
        assert answer.value == OMEGA
        assert answer.detected == 'CountOmega'
        assert answer.values == list(range(2, 17))

    def test_short_window_is_unstable(self):
        p = load('star_of_rays')
        q = Query(COMPONENTS, p.name, Separator(VERTEX_SET, ['c:c']))
        with self.assertRaises(Unstable):
            stabilized(q, p, max_depth=4)

    def test_bridge_cut(self):
        p = load('three_cliques')
        q = Query(CUT, p.name, a='c:a', b='c:w')
        assert self.oracle.stabilized(q, p).value == 1
        assert self.oracle.symbolic_answer(q, p) == 1

    def test_rayless(self):
        star = load('infinite_star')
        assert self.oracle.stabilized(Query(RAYLESS, star.name, a='c:c'), star).value is True
        double = load('double_ray_dominator')
        answer = self.oracle.stabilized(Query(RAYLESS, double.name, a='c:hub'), double)
        assert answer.value is False
        assert answer.detected == 'PathGrowth'

    def test_env_override(self):
        os.environ['ENDSPACE_MAX_DEPTH'] = '7'
        try:
            assert Oracle().max_depth == 7
            assert Oracle(max_depth=9).max_depth == 9
        finally:
            del os.environ['ENDSPACE_MAX_DEPTH']
        assert Oracle().max_depth == Oracle.Max_depth

    def test_tail_must_be_a_ray_gadget(self):
        p = load('star_of_rays')
        with self.assertRaises(UnresolvedRef):
            self.oracle.evaluate(Query(CUT, p.name, a='c:c', tail='g:s'), p, 3)


class TestQueries(unittest.TestCase):

    def test_document_round_trip(self):
        q = Query(CUT, 'double_ray_dominator', a='c:hub', tail='g:r1')
        again = Query.from_document(q.to_document())
        assert again.key() == q.key()

    def test_malformed_queries(self):
        with self.assertRaises(SchemaError):
            Query('bogus')
        with self.assertRaises(SchemaError):
            Query.from_document({'kind': SAME_COMPONENT, 'a': 'c:a'})
        with self.assertRaises(SchemaError):
            Query.from_document({'kind': CUT, 'a': 'c:a', 'b': 'c:w', 'tail': 'g:r1'})
        with self.assertRaises(SchemaError):
            Query.from_document({'kind': RAYLESS})
        with self.assertRaises(SchemaError):
            Query.from_document({'kind': COMPONENTS, 'separator': {'kind': 'face', 'elements': []}})

    def test_matrix_size(self):
        assert len(catalog_query_matrix()) >= 300

    def test_unknown_presentation(self):
        q = Query(COMPONENTS, 'nowhere')
        with self.assertRaises(UnresolvedRef):
            run_differential([q], {'a': load('three_cliques'), 'b': load('star_of_rays')})


class TestDifferential(unittest.TestCase):

    def test_catalog_agrees(self):
        oracle = Oracle()
        for name in ('three_cliques', 'two_cliques_bridge', 'star_of_rays', 'omega_rays', 'double_ray_dominator',
                     'infinite_star'):
            p = load(name)
            report = run_differential(build_query_matrix(p), {p.name: p}, oracle)
            assert report.passed, (name, report.mismatches[:5])
            assert report.to_document()['queries'] == len(report.rows)


if __name__ == '__main__':
    unittest.main()
