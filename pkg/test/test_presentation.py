# coding=utf-8
import itertools
import unittest

from endspace.FiniteGraph import FiniteGraph, SchemaError, DanglingRef, LoopEdge, UnresolvedRef
from endspace.Presentation import parse_presentation, INFINITE
from endspace.catalog import load, load_all, names


def ray_presentation():
    return parse_presentation({'name': 'ray', 'gadgets': [{'id': 'r', 'kind': 'Ray'}]})


class TestPresentation(unittest.TestCase):
    """Parsing, truncation counts and lazy adjacency"""

    def test_two_vertex_core(self):
        p = parse_presentation('{"name": "edge", "core": {"vertices": ["a", "b"], "edges": [["a", "b"]]}}')
        t = p.truncate(3)
        assert t.graph.vertices == ['c:a', 'c:b']
        assert t.graph.edges == [('c:a', 'c:b')]
        assert t.frontier == set()

    def test_three_cliques_document(self):
        p = load('three_cliques')
        assert len(p.gadgets) == 3
        assert [g.kind for g in p.gadgets] == ['OmegaClique'] * 3

    def test_dangling_along_host(self):
        doc = {'name': 'bad', 'core': {'vertices': ['a'], 'edges': []},
               'families': [{'id': 'F', 'pattern': 'SingleVertex', 'per_copy_edges': [['0', {'along': 'r9'}]]}]}
        with self.assertRaises(DanglingRef):
            parse_presentation(doc)

    def test_dangling_family_host_with_explicit_edges(self):
        doc = {'name': 'bad', 'core': {'vertices': ['a'], 'edges': []},
               'families': [{'id': 'F', 'pattern': 'SingleVertex', 'host': {'along': 'r9'},
                             'per_copy_edges': [['0', 'a']]}]}
        with self.assertRaises(DanglingRef):
            parse_presentation(doc)
        doc['families'][0]['host'] = 'nowhere'
        with self.assertRaises(DanglingRef):
            parse_presentation(doc)

    def test_loop_edge(self):
        with self.assertRaises(LoopEdge):
            parse_presentation({'name': 'loop', 'core': {'vertices': ['a'], 'edges': [['a', 'a']]}})

    def test_schema_errors(self):
        with self.assertRaises(SchemaError):
            parse_presentation('{not json')
        with self.assertRaises(SchemaError):
            parse_presentation({'core': {'vertices': ['a'], 'edges': []}})
        with self.assertRaises(SchemaError):
            parse_presentation({'name': 'dup', 'core': {'vertices': ['a', 'a'], 'edges': []}})
        with self.assertRaises(SchemaError):
            parse_presentation({'name': 'star', 'core': {'vertices': ['c'], 'edges': []},
                                'gadgets': [{'id': 's', 'kind': 'StarOfRays',
                                             'attachments': [{'host': 'c', 'mode': 'All'}]}]})

    def test_finite_graph_rejects_dangling_edges(self):
        with self.assertRaises(DanglingRef):
            FiniteGraph(['a'], [('a', 'b')])

    def test_ray_truncation(self):
        t = ray_presentation().truncate(3)
        assert t.graph.vertices == ['g:r:0', 'g:r:1', 'g:r:2']
        assert t.frontier == set(['g:r:2'])

    def test_truncation_counts(self):
        assert len(load('star_of_rays').truncate(2).graph) == 5
        assert len(load('star_of_rays').truncate(3).graph) == 10
        assert len(load('three_cliques').truncate(4).graph) == 14
        assert len(load('double_ray_dominator').truncate(5).graph) == 11

    def test_truncations_are_nested(self):
        for p in load_all():
            small, large = p.truncate(3).graph, p.truncate(5).graph
            assert small.is_induced_subgraph_of(large), p.name

    def test_ray_neighbors(self):
        p = ray_presentation()
        assert sorted(p.neighbors('g:r:5')) == ['g:r:4', 'g:r:6']
        assert p.degree('g:r:5') == 2

    def test_star_center_stream(self):
        p = load('star_of_rays')
        first = list(itertools.islice(p.neighbors('c:c'), 5))
        assert len(set(first)) == 5
        assert all(v.startswith('g:s:') and v.endswith(':0') for v in first)
        assert p.degree('c:c') == INFINITE

    def test_clique_member_stream(self):
        p = load('two_cliques_bridge')
        first = list(itertools.islice(p.neighbors('g:K1:3'), 6))
        assert 'g:K1:3' not in first
        assert len(set(first)) == 6

    def test_unresolved_vertex(self):
        with self.assertRaises(UnresolvedRef):
            load('three_cliques').resolve('c:nope')

    def test_catalog_round_trip(self):
        for name in names():
            p = load(name)
            again = parse_presentation(p.dumps())
            assert again.to_document() == p.to_document(), name


if __name__ == '__main__':
    unittest.main()
