# coding=utf-8
import unittest

from endspace.Compactness import Compactness, NotInduced, verify_dense_subgraph
from endspace.Presentation import parse_presentation
from endspace.catalog import load, document


class TestTimidCriterion(unittest.TestCase):
    """Witnesses of non-compactness and the agreement of the equivalent clauses"""

    def test_star_of_rays_witness(self):
        verdict = Compactness(load('star_of_rays')).timid_criterion()
        assert not verdict.compact
        assert verdict.witness.elements == ['c:c']
        assert verdict.to_document()['result'] == 'Witness'

    def test_omega_rays_empty_witness(self):
        verdict = Compactness(load('omega_rays')).timid_criterion()
        assert not verdict.compact
        assert verdict.witness.elements == []

    def test_three_cliques_compact(self):
        verdict = Compactness(load('three_cliques')).timid_criterion()
        assert verdict.compact
        assert verdict.to_document()['result'] == 'Compact'

    def test_notendspace_graph(self):
        assert not Compactness(load('notendspace_graph')).timid_criterion().compact

    def test_candidates_are_timid_hubs(self):
        assert Compactness(load('star_of_rays')).candidates() == ['c:c']
        assert Compactness(load('double_ray_dominator')).candidates() == []


class TestClauses(unittest.TestCase):

    def test_star_of_rays_all_false(self):
        report = Compactness(load('star_of_rays')).clauses()
        assert report.agree
        assert not any(report.clauses.values())

    def test_two_cliques_bridge_all_true(self):
        report = Compactness(load('two_cliques_bridge')).clauses()
        assert report.agree
        assert all(report.clauses.values())

    def test_infinite_star_all_true(self):
        report = Compactness(load('infinite_star')).clauses()
        assert report.agree
        assert all(report.clauses.values())


class TestIota(unittest.TestCase):

    def test_three_cliques_bijective(self):
        report = Compactness(load('three_cliques')).iota_check()
        assert report.compact and report.bijective
        assert report.consistent

    def test_star_of_rays_not_bijective(self):
        report = Compactness(load('star_of_rays')).iota_check()
        assert not report.compact
        assert not report.bijective
        assert report.consistent

    def test_finite_graph(self):
        p = parse_presentation({'name': 'edge', 'core': {'vertices': ['a', 'b'], 'edges': [['a', 'b']]}})
        report = Compactness(p).iota_check()
        assert report.compact and report.consistent


class TestDenseSubgraph(unittest.TestCase):

    def test_whole_graph(self):
        p = load('star_of_rays')
        assert verify_dense_subgraph(p, p).passed

    def test_missing_rays(self):
        p = load('star_of_rays')
        doc = document('star_of_rays')
        doc['gadgets'] = []
        doc['name'] = 'center_only'
        report = verify_dense_subgraph(p, parse_presentation(doc))
        assert not report.passed
        assert report.conditions['rayless_outside'] == ['g:s']

    def test_not_induced(self):
        p = load('star_of_rays')
        doc = {'name': 'other', 'core': {'vertices': ['x'], 'edges': []}}
        with self.assertRaises(NotInduced):
            verify_dense_subgraph(p, parse_presentation(doc))


if __name__ == '__main__':
    unittest.main()
