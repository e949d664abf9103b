# coding=utf-8
import unittest

from endspace.FiniteGraph import FiniteGraph
from endspace.Presentation import parse_presentation, Truncation
from endspace.StarComb import star_or_comb, Star, Comb, Exhausted, TargetTooSmall, greedy_path, bfs_spine
from endspace.catalog import load, load_all


class TestStarComb(unittest.TestCase):
    """Certificates found on truncations, each one checked against the graph"""

    def test_star_of_leaves(self):
        t = load('infinite_star').truncate(8)
        D = [v for v in t.graph.vertices if v != 'c:c']
        result = star_or_comb(t, D, 5)
        assert isinstance(result, Star)
        assert result.center == 'c:c'
        assert len(result.tips) == 5
        assert result.verify(t.graph, D)

    def test_comb_on_a_ray(self):
        ray = parse_presentation({'name': 'ray', 'gadgets': [{'id': 'r', 'kind': 'Ray'}]})
        t = ray.truncate(10)
        D = ['g:r:%d' % i for i in range(0, 10, 2)]
        result = star_or_comb(t, D, 5)
        assert isinstance(result, Comb)
        assert result.spine == ['g:r:%d' % i for i in range(10)]
        assert sorted(result.teeth) == sorted(D)
        assert result.verify(t.graph, D)

    def test_comb_along_dominated_ray(self):
        t = load('double_ray_dominator').truncate(12)
        D = ['g:r1:%d' % i for i in range(12)]
        result = star_or_comb(t, D, 6)
        assert isinstance(result, Comb)
        assert len(result.teeth) == 6
        assert result.verify(t.graph, D)

    def test_target_too_small(self):
        t = load('star_of_rays').truncate(2)
        with self.assertRaises(TargetTooSmall):
            star_or_comb(t, t.graph.vertices, 6)
        with self.assertRaises(TargetTooSmall):
            star_or_comb(t, ['c:c', 'c:nowhere'], 2)

    def test_exhausted_on_short_components(self):
        t = load('omega_rays').truncate(3)
        result = star_or_comb(t, t.graph.vertices, 4)
        assert isinstance(result, Exhausted)
        assert result.to_document() == {'kind': 'Exhausted', 'budget': 3, 'best': 0}

    def test_every_catalog_truncation(self):
        for p in load_all():
            t = p.truncate(14)
            result = star_or_comb(t, t.graph.vertices, 10)
            assert result.kind in ('Star', 'Comb'), p.name
            assert result.verify(t.graph, t.graph.vertices)

    def test_spines(self):
        g = FiniteGraph(['a', 'b', 'c', 'd'], [('a', 'b'), ('b', 'c'), ('b', 'd')])
        assert bfs_spine(g, 'a') == ['a', 'b', 'c']
        assert greedy_path(g, 'd') == ['d', 'b', 'a']
        assert greedy_path(g, 'a', allowed=set(['a', 'b', 'd'])) == ['a', 'b', 'd']

    def test_broken_certificates_fail_verification(self):
        g = FiniteGraph(['a', 'b', 'c'], [('a', 'b')])
        with self.assertRaises(AssertionError):
            Star('a', ['c'], [['a', 'c']]).verify(g, ['c'])
        with self.assertRaises(AssertionError):
            Comb(['a', 'c'], ['a'], [['a']]).verify(g, ['a'])

    def test_certificate_document(self):
        t = Truncation(1, FiniteGraph(['a', 'b', 'c'], [('a', 'b'), ('b', 'c')]), [])
        doc = star_or_comb(t, ['a', 'b', 'c'], 3).to_document()
        assert doc['kind'] == 'Comb'
        assert doc['spine'] == ['a', 'b', 'c']


if __name__ == '__main__':
    unittest.main()
