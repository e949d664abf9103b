# coding=utf-8
import unittest

from endspace.FiniteGraph import FiniteGraph, UnresolvedRef
from endspace.Presentation import Truncation
from endspace.Separation import Separation, Separator, VERTEX_SET, EDGE_SET, components_finite, NON_RAYLESS, \
    RAYLESS
from endspace.catalog import load


def path(n):
    vertices = ['v%d' % i for i in range(n)]
    return FiniteGraph(vertices, zip(vertices, vertices[1:]))


class TestSeparation(unittest.TestCase):
    """Components of G minus a finite separator, on the skeleton and on truncations"""

    def test_empty_separator_connected(self):
        for name in ('three_cliques', 'star_of_rays', 'double_ray_dominator', 'notendspace_graph'):
            records = Separation(load(name)).components(Separator(VERTEX_SET))
            assert len(records) == 1, name

    def test_omega_rays_empty_separator(self):
        records = Separation(load('omega_rays')).components(Separator(VERTEX_SET))
        assert len([r for r in records if r.multiplicity != 1]) == 1
        assert all(r.ray_class == NON_RAYLESS for r in records)

    def test_bridge_edge(self):
        F = Separator(EDGE_SET, ['c:a|c:w'])
        records = Separation(load('three_cliques')).components(F)
        assert len(records) == 2
        assert all(r.infinite and r.ray_class == NON_RAYLESS for r in records)

    def test_star_minus_center(self):
        records = Separation(load('star_of_rays')).components(Separator(VERTEX_SET, ['c:c']), infinite_only=True)
        family = [r for r in records if r.multiplicity != 1]
        assert len(family) == 1
        assert family[0].infinite and family[0].rays

    def test_infinite_star_is_rayless(self):
        records = Separation(load('infinite_star')).components(Separator(VERTEX_SET))
        assert len(records) == 1
        assert records[0].infinite
        assert records[0].ray_class == RAYLESS

    def test_component_of(self):
        sep = Separation(load('three_cliques'))
        F = Separator(VERTEX_SET, ['c:w'])
        rec = sep.component_of(F, 'c:a')
        assert 'c:a' in rec.nodes
        with self.assertRaises(UnresolvedRef):
            sep.component_of(F, 'c:w')

    def test_transition_refines(self):
        sep = Separation(load('three_cliques'))
        small = Separator(VERTEX_SET)
        large = Separator(VERTEX_SET, ['c:w'])
        mapping, fine, coarse = sep.transition(small, large)
        assert len(coarse) == 1
        assert set(mapping.values()) == set([coarse[0].id])
        assert len(fine) == 3

    def test_non_skeleton_separator(self):
        with self.assertRaises(UnresolvedRef):
            Separation(load('three_cliques')).components(Separator(VERTEX_SET, ['c:nope']))


class TestFiniteComponents(unittest.TestCase):

    def test_path_minus_middle(self):
        t = Truncation(1, path(5), [])
        comps = components_finite(t, Separator(VERTEX_SET, ['v2']))
        assert [c for c, _ in comps] == [['v0', 'v1'], ['v3', 'v4']]

    def test_k4_minus_edge(self):
        g = FiniteGraph(['a', 'b', 'c', 'd'], [('a', 'b'), ('a', 'c'), ('a', 'd'), ('b', 'c'), ('b', 'd'),
                                               ('c', 'd')])
        comps = components_finite(Truncation(1, g, []), Separator(EDGE_SET, ['a|b']))
        assert len(comps) == 1

    def test_three_cliques_truncation_minus_bridge(self):
        t = load('three_cliques').truncate(4)
        comps = components_finite(t, Separator(EDGE_SET, ['c:a|c:w']))
        assert len(comps) == 2
        assert all(touches for _, touches in comps)


if __name__ == '__main__':
    unittest.main()
