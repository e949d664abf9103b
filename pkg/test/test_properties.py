# coding=utf-8
import unittest

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from endspace.FiniteGraph import FiniteGraph
from endspace.LineGraph import component_correspondence_failures
from endspace.Presentation import parse_presentation, Truncation
from endspace.Separation import Separator, VERTEX_SET, components_finite
from endspace.StarComb import star_or_comb

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


@st.composite
def finite_graphs(draw, max_vertices=8):
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    vertices = ['v%d' % i for i in range(n)]
    pairs = [(vertices[i], vertices[j]) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return FiniteGraph(vertices, edges)


@st.composite
def presentations(draw):
    core = ['a', 'b', 'c'][:draw(st.integers(min_value=1, max_value=3))]
    doc = {'name': 'random', 'core': {'vertices': core, 'edges': [[u, v] for u, v in zip(core, core[1:])]},
           'gadgets': [], 'families': []}
    if draw(st.booleans()):
        mode = draw(st.sampled_from(['FirstOnly', 'All']))
        doc['gadgets'].append({'id': 'r', 'kind': 'Ray', 'attachments': [{'host': core[-1], 'mode': mode}]})
    if draw(st.booleans()):
        members = draw(st.lists(st.sampled_from(core), unique=True, max_size=len(core)))
        doc['gadgets'].append({'id': 'K', 'kind': 'OmegaClique', 'core_members': members, 'attachments': []})
    if draw(st.booleans()):
        doc['gadgets'].append({'id': 's', 'kind': 'StarOfRays',
                               'attachments': [{'host': core[0], 'mode': 'FirstOnly'}]})
    if draw(st.booleans()):
        pattern = draw(st.sampled_from(['SingleVertex', 'Ray']))
        doc['families'].append({'id': 'F', 'pattern': pattern, 'host': core[0],
                                'chained': draw(st.booleans())})
    return parse_presentation(doc)


class TestGraphProperties(unittest.TestCase):
    """Invariants over random finite graphs and random presentations"""

    @PROPERTY_SETTINGS
    @given(g=finite_graphs(), data=st.data())
    def test_line_graph_components(self, g, data):
        F = data.draw(st.lists(st.sampled_from(g.edges), unique=True, max_size=3)) if g.edges else []
        assert component_correspondence_failures(g, F) == []

    @PROPERTY_SETTINGS
    @given(g=finite_graphs(), data=st.data())
    def test_components_partition_the_rest(self, g, data):
        F = data.draw(st.lists(st.sampled_from(g.vertices), unique=True, max_size=3))
        comps = components_finite(Truncation(1, g, []), Separator(VERTEX_SET, F))
        seen = [v for comp, _ in comps for v in comp]
        assert sorted(seen) == sorted(set(g.vertices) - set(F))
        for comp, touches in comps:
            assert not touches

    @PROPERTY_SETTINGS
    @given(g=finite_graphs(max_vertices=10), k=st.integers(min_value=1, max_value=4))
    def test_certificates_verify(self, g, k):
        t = Truncation(1, g, [])
        result = star_or_comb(t, g.vertices, min(k, len(g)))
        if result.kind != 'Exhausted':
            assert result.verify(g, g.vertices)
            assert len(result.paths) == min(k, len(g))

    @PROPERTY_SETTINGS
    @given(p=presentations(), n=st.integers(min_value=1, max_value=5))
    def test_truncations_nested(self, p, n):
        small, large = p.truncate(n), p.truncate(n + 1)
        assert small.graph.is_induced_subgraph_of(large.graph)
        assert small.frontier <= set(small.graph.vertices)
        for v in small.graph.vertices:
            assert p.depth_of(v) <= n

    @PROPERTY_SETTINGS
    @given(p=presentations())
    def test_document_round_trip(self, p):
        assert parse_presentation(p.dumps()).to_document() == p.to_document()


if __name__ == '__main__':
    unittest.main()
