# coding=utf-8
import itertools
import unittest

from endspace.Completion import completion, check_completion
from endspace.FiniteGraph import FiniteGraph, SchemaError
from endspace.HGraph import h_graph, h_graph_finite, component_bijection, dominant_component_failures
from endspace.LineGraph import line_graph, line_vertex, component_correspondence_failures, check_line_directions
from endspace.Presentation import parse_presentation
from endspace.Quotient import quotient_sim, project_walk, check_ray_projection
from endspace.Spaces import Spaces
from endspace.Subdivision import subdivide_graph, timid_to_edge, check_subdivision_timid_ends
from endspace.Transforms import NotTimid, transform, OPS
from endspace.catalog import load


def clique(names):
    return FiniteGraph(names, itertools.combinations(names, 2))


class TestLineGraph(unittest.TestCase):

    def test_path(self):
        g = FiniteGraph(['a', 'b', 'c'], [('a', 'b'), ('b', 'c')])
        lg = line_graph(g).output
        assert lg.vertices == [line_vertex('a', 'b'), line_vertex('b', 'c')]
        assert len(lg.edges) == 1

    def test_triangle_is_self_line_graph(self):
        lg = line_graph(clique(['a', 'b', 'c'])).output
        assert len(lg) == 3
        assert len(lg.edges) == 3

    def test_k4_octahedron(self):
        lg = line_graph(clique(['a', 'b', 'c', 'd'])).output
        assert len(lg) == 6
        assert all(lg.degree(v) == 4 for v in lg.vertices)

    def test_separator_transport(self):
        result = line_graph(clique(['a', 'b', 'c', 'd']))
        assert result.vertex_map['a|b'] == 'l:a/b'
        assert component_correspondence_failures(clique(['a', 'b', 'c', 'd']), [('a', 'b'), ('c', 'd')]) == []

    def test_star_of_rays_directions(self):
        assert check_line_directions(load('star_of_rays')).passed


class TestHGraph(unittest.TestCase):

    def test_no_dominating_vertex(self):
        g = clique(['a', 'b', 'c'])
        h = h_graph_finite(g, lambda v: False)
        assert h.vertices == g.vertices and h.edges == g.edges

    def test_double_ray_dominator(self):
        p = load('double_ray_dominator')
        result = h_graph(p)
        assert result.map_vertex('c:hub') == 'k:c:hub'
        assert len(Spaces(result.output).ends()) == 1
        assert dominant_component_failures(p) == []

    def test_component_bijection(self):
        assert component_bijection(load('star_of_rays'), ['c:c']).passed
        assert component_bijection(load('two_cliques_bridge'), []).passed
        with self.assertRaises(NotTimid):
            component_bijection(load('three_cliques'), ['c:a'])


class TestCompletion(unittest.TestCase):

    def test_nothing_to_complete(self):
        p = load('three_cliques')
        assert completion(p).output is p

    def test_star_of_rays(self):
        p = load('star_of_rays')
        before = len(Spaces(p).edge_directions())
        result = completion(p)
        assert result.output is not p
        assert len(Spaces(result.output).edge_directions()) == before
        report = check_completion(p, samples=50)
        assert report.passed
        assert report.rayless_after == []

    def test_infinite_star(self):
        result = completion(load('infinite_star'))
        assert len(Spaces(result.output).edge_ends()) == 1


class TestQuotient(unittest.TestCase):

    def test_project_walk(self):
        classes = {'a': 'K', 'b': 'K', 'd': 'K'}
        pi = lambda v: classes.get(v, v)
        assert project_walk(pi, ['x', 'a', 'c', 'b', 'd', 'e']) == ['x', 'K', 'e']
        assert project_walk(pi, []) == []

    def test_no_timid_classes(self):
        p = load('three_cliques')
        assert quotient_sim(p).output is p

    def test_twin_hubs_contract(self):
        p = load('twin_hubs')
        result = quotient_sim(p)
        assert result.output is not p
        assert result.map_vertex('c:u') == result.map_vertex('c:v')
        assert len(Spaces(result.output).edge_ends()) == len(Spaces(p).edge_ends())
        assert check_ray_projection(result, ['g:r:0', 'c:u', 'f:T:0:0', 'c:v', 'g:q:0']) == []


class TestSubdivision(unittest.TestCase):

    def test_triangle_to_hexagon(self):
        h = subdivide_graph(clique(['a', 'b', 'c']))
        assert len(h) == 6
        assert all(h.degree(v) == 2 for v in h.vertices)
        assert len(h.components()) == 1

    def test_edge_ends_are_subdivision_timid_ends(self):
        assert check_subdivision_timid_ends(load('three_cliques')).passed

    def test_timid_to_edge(self):
        p = load('two_cliques_bridge')
        result = timid_to_edge(p)
        assert result.output is not p
        assert len(Spaces(result.output).edge_ends()) == len(Spaces(p).timid_ends()) == 1

    def test_timid_to_edge_identity(self):
        p = load('star_of_rays')
        assert timid_to_edge(p).output is p


class TestTransformDispatch(unittest.TestCase):

    def test_ops(self):
        p = load('three_cliques')
        for op in OPS:
            doc = transform(p, op).to_document()
            assert doc['op'] == op
            assert doc['source'] == p.name

    def test_unknown_op(self):
        with self.assertRaises(ValueError):
            transform(load('three_cliques'), 'bogus')

    def test_derived_input_rejected(self):
        line = transform(load('three_cliques'), 'line').output
        with self.assertRaises(SchemaError):
            transform(line, 'completion')

    def test_finite_presentation(self):
        p = parse_presentation({'name': 'path', 'core': {'vertices': ['a', 'b'], 'edges': [['a', 'b']]}})
        assert completion(p).output is p


if __name__ == '__main__':
    unittest.main()
