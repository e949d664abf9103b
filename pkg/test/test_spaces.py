# coding=utf-8
import unittest

from endspace.Cuts import USpec
from endspace.Presentation import parse_presentation
from endspace.Separation import Separator, VERTEX_SET, EDGE_SET
from endspace.Spaces import Spaces, ResolutionOverflow, PartialBijection, correspondence_check, identity_map, \
    rho_surjectivity_check, openness_probe, iota, RAYLESS_HUB
from endspace.catalog import load


class TestSpaceSizes(unittest.TestCase):
    """Point counts of the end spaces on the catalog"""

    def sizes(self, name):
        spaces = Spaces(load(name))
        return len(spaces.ends()), len(spaces.edge_ends()), len(spaces.timid_ends())

    def test_three_cliques(self):
        assert self.sizes('three_cliques') == (3, 2, 1)

    def test_two_cliques_bridge(self):
        assert self.sizes('two_cliques_bridge') == (2, 2, 1)

    def test_double_ray_dominator(self):
        ends, edge_ends, _ = self.sizes('double_ray_dominator')
        assert (ends, edge_ends) == (2, 1)

    def test_finite_graph_is_empty(self):
        p = parse_presentation({'name': 'triangle', 'core': {'vertices': ['a', 'b', 'c'],
                                                             'edges': [['a', 'b'], ['b', 'c'], ['a', 'c']]}})
        spaces = Spaces(p)
        assert len(spaces.ends()) == 0
        assert len(spaces.edge_directions()) == 0
        assert spaces.edge_ends().is_compact()


class TestSpaceTopology(unittest.TestCase):

    def test_omega_rays_discrete(self):
        summary = Spaces(load('omega_rays')).edge_ends()
        assert len(summary.families()) == 1
        assert summary.accumulation() == []
        assert not summary.is_compact()

    def test_star_of_rays_hub_compactifies(self):
        spaces = Spaces(load('star_of_rays'))
        directions = spaces.edge_directions()
        hubs = [pt for pt in directions.points if pt.source == RAYLESS_HUB]
        assert [pt.id for pt in hubs] == ['hub:c:c']
        family = directions.families()[0]
        assert ('hub:c:c', family.id) in directions.accumulation()
        assert directions.is_compact()
        assert not spaces.edge_ends().is_compact()

    def test_infinite_star_single_rayless_direction(self):
        spaces = Spaces(load('infinite_star'))
        directions = spaces.edge_directions()
        assert len(directions) == 1
        assert directions.points[0].source == RAYLESS_HUB
        assert len(spaces.edge_ends()) == 0

    def test_iota_is_injective(self):
        spaces = Spaces(load('three_cliques'))
        ends, directions = spaces.edge_ends(), spaces.edge_directions()
        images = [iota(directions, e).id for e in ends.points]
        assert len(set(images)) == 2

    def test_partitions_refine(self):
        for name in ('three_cliques', 'star_of_rays', 'clique_star'):
            assert Spaces(load(name)).ends().coherence_failures() == [], name

    def test_summary_document(self):
        doc = Spaces(load('three_cliques')).edge_ends().to_document()
        assert doc['compact']
        assert len(doc['points']) == 2
        assert 'E{}' in doc['partitions']
        brief = Spaces(load('three_cliques')).edge_ends().to_document(with_partitions=False)
        assert 'partitions' not in brief

    def test_explicit_copies_listed_inside_their_family(self):
        summary = Spaces(load('omega_rays')).edge_ends()
        singletons = sorted(pt.id for pt in summary.singletons())
        assert len(singletons) > 0
        doc = summary.to_document()
        assert len(doc['points']) == 1
        entry = doc['points'][0]
        assert entry['shape'] == 'OmegaFamily'
        assert sorted(entry['explicit']) == singletons
        assert len(summary) == len(singletons) + 1

    def test_exact_resolution_overflow(self):
        with self.assertRaises(ResolutionOverflow):
            Spaces(load('three_cliques'), full_subset_budget=0, exact=True).edge_ends()
        capped = Spaces(load('three_cliques'), full_subset_budget=0, capped_subset_size=1).edge_ends()
        assert capped.capped
        assert max(len(F) for F in capped.separators) == 1


class TestCorrespondence(unittest.TestCase):

    def setUp(self):
        self.ends = Spaces(load('three_cliques')).edge_ends()

    def test_identity_passes(self):
        report = correspondence_check(self.ends, self.ends, identity_map(self.ends), sep_map=lambda F: F)
        assert report.passed
        assert correspondence_check(self.ends, self.ends, identity_map(self.ends)).passed

    def test_swap_fails_at_the_bridge(self):
        a, b = self.ends.ids()
        report = correspondence_check(self.ends, self.ends, {a: b, b: a}, sep_map=lambda F: F,
                                      vertex_map=lambda v: v)
        assert not report.passed
        assert Separator(EDGE_SET, ['c:a|c:w']).key() in [f[0] for f in report.failures]
        assert Separator(EDGE_SET).key() not in [f[0] for f in report.failures]

    def test_partial_map(self):
        a = self.ends.ids()[0]
        with self.assertRaises(PartialBijection):
            correspondence_check(self.ends, self.ends, {a: a})


class TestRho(unittest.TestCase):

    def test_star_center_missed(self):
        report = rho_surjectivity_check(load('star_of_rays'), USpec.parse('all-c:c'))
        assert not report.surjective
        assert report.consistent
        assert report.misses == ['hub:c:c']

    def test_all_vertices_surjective(self):
        for name in ('three_cliques', 'star_of_rays', 'double_ray_dominator', 'clique_star'):
            report = rho_surjectivity_check(load(name), USpec.parse('all'))
            assert report.surjective, name

    def test_timid_consistent(self):
        for name in ('three_cliques', 'star_of_rays', 'two_cliques_bridge'):
            assert rho_surjectivity_check(load(name), USpec.parse('timid')).consistent, name


class TestOpenness(unittest.TestCase):

    def test_empty_separator_open(self):
        p = load('three_cliques')
        report = openness_probe(p, USpec.parse('timid'), 'g:A', Separator(VERTEX_SET))
        assert report.open

    def test_clique_end_not_open_in_timid_ends(self):
        report = openness_probe(load('clique_star'), USpec.parse('timid'), 'g:K', Separator(VERTEX_SET, ['c:v0']))
        assert not report.open


if __name__ == '__main__':
    unittest.main()
