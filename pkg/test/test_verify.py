# coding=utf-8
import unittest

from endspace.Verify import THEOREMS, verify
from endspace.catalog import load, load_all


class TestSuitesOnCatalog(unittest.TestCase):
    """Every verification suite holds on every catalog presentation"""

    def test_every_suite(self):
        for p in load_all():
            for theorem in THEOREMS:
                kwargs = {'samples': 100} if theorem == 'completion' else {}
                report = verify(p, theorem, **kwargs)
                failed = sorted(name for name, c in report.checks.items() if not c['passed'])
                assert report.passed, (p.name, theorem, failed)

    def test_hgraph_ends_with_hidden_rays(self):
        for name in ('star_of_rays', 'notendspace_graph'):
            report = verify(load(name), 'hgraph')
            assert report.checks['ends_correspondence']['passed'], name

    def test_timid_to_edge_with_hidden_rays(self):
        for name in ('star_of_rays', 'notendspace_graph'):
            report = verify(load(name), 'timid')
            assert report.checks['timid_to_edge']['passed'], name

    def test_pidsurj_on_stars(self):
        for name in ('star_of_rays', 'clique_star', 'twin_hubs', 'nonmet_countable'):
            assert verify(load(name), 'pidsurj').passed, name

    def test_unknown_theorem(self):
        with self.assertRaises(ValueError):
            verify(load('three_cliques'), 'bogus')


if __name__ == '__main__':
    unittest.main()
