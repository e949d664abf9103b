# coding=utf-8
import os
import subprocess
import sys
import unittest

from endspace.Cuts import USpec, RaySpec, UnsupportedUSpec, engine, min_edge_cut, check_alone_timid, \
    check_timid_edge_separation
from endspace.FiniteGraph import UnresolvedRef
from endspace.catalog import load


class TestCuts(unittest.TestCase):
    """Edge cuts, domination and timidity on the skeleton"""

    def setUp(self):
        self.three = load('three_cliques')
        self.star = load('star_of_rays')
        self.double = load('double_ray_dominator')

    def test_bridge_between_cliques(self):
        cut = min_edge_cut(self.three.skeleton(), '~g:A', '~g:B')
        assert cut.finite
        assert cut.value == 1
        assert cut.witness == ['c:a|c:w']

    def test_inside_one_clique(self):
        cut = min_edge_cut(self.three.skeleton(), 'c:a', '~g:A')
        assert not cut.finite
        assert cut.to_document()['value'] == 'Infinite'

    def test_edge_equivalence(self):
        e = engine(self.double)
        assert e.edge_equivalent(RaySpec('g:r1'), RaySpec('g:r1'))
        assert e.edge_equivalent(RaySpec('g:r1'), RaySpec('g:r2'))
        s = engine(self.star)
        assert not s.edge_equivalent(RaySpec('g:s:0'), RaySpec('g:s:1'))
        assert s.ray_cut(RaySpec('g:s:0'), RaySpec('g:s:1')).finite

    def test_edge_domination(self):
        assert engine(self.double).edge_dominates('c:hub', RaySpec('g:r1'))
        assert engine(self.double).edge_dominates('c:hub', RaySpec('g:r2'))
        assert not engine(self.star).edge_dominates('c:c', RaySpec('g:s:0'))
        assert engine(self.three).edge_dominates('c:a', RaySpec('g:A'))

    def test_timid(self):
        assert engine(self.star).timid('c:c')
        assert not engine(self.three).timid('c:a')
        assert not engine(self.three).timid('c:w')
        assert engine(self.double).dominating('c:hub')
        assert engine(load('twin_hubs')).timid('g:r:5')

    def test_timid_unresolved(self):
        with self.assertRaises(UnresolvedRef):
            engine(self.star).timid('c:nope')

    def test_ray_prefix_must_be_a_walk(self):
        with self.assertRaises(UnresolvedRef):
            engine(self.three).edge_equivalent(RaySpec.parse('c:a,g:B:0>g:B'), RaySpec('g:A'))

    def test_sim_E(self):
        e = engine(self.three)
        assert e.sim_E('c:a', 'c:a')
        assert not e.sim_E('c:a', 'c:w')
        assert e.sim_E('c:w', 'g:B:0')
        cut = e.sim_E_cut('c:a', 'c:w')
        assert cut.value == 1 and cut.witness == ['c:a|c:w']

    def test_three_cliques_classes(self):
        classes = engine(self.three).classes_sim_E()
        assert len(classes) == 2
        assert all(c.size == float('inf') for c in classes)

    def test_u_timid_star_center(self):
        U = USpec.parse('all-c:c')
        e = engine(self.star)
        assert e.u_timid('c:c', U)
        assert e.u_dense('c:c', U)
        b = e.boundary_tU(U)
        assert 'c:c' in b.explicit
        assert not b.subset_of(self.star, U)

    def test_reach_stays_on_the_skeleton(self):
        for name, text in (('star_of_rays', 'all-c:c'), ('nonmet_countable', 'all'), ('twin_hubs', 'timid')):
            p = load(name)
            e = engine(p)
            for v in e.explicit_vertices():
                s, reach = e._reachable(v, USpec.parse(text))
                assert all(n in s.graph for n in reach), (name, v)

    def test_timid_boundary_three_cliques(self):
        b = engine(self.three).boundary_tU(USpec.parse('timid'))
        assert b.explicit == [] and b.families == []

    def test_uspec_text(self):
        U = USpec.parse('all-c:c,c:d+c:e;s=off')
        assert U.base == 'all'
        assert U.exclude == set(['c:c', 'c:d'])
        assert U.include == set(['c:e'])
        assert U.describe() == 'all-c:c,c:d+c:e;s=off'
        with self.assertRaises(UnsupportedUSpec):
            USpec.parse('some')
        with self.assertRaises(UnsupportedUSpec):
            USpec.parse('all;zz=on').validate(self.star)
        with self.assertRaises(UnsupportedUSpec):
            USpec.parse('all-c:nope').validate(self.star)

    def test_ray_spec_text(self):
        r = RaySpec.parse('c:a,c:w>g:B')
        assert r.prefix == ['c:a', 'c:w']
        assert r.tail == 'g:B'

    def test_timid_consistency_checks(self):
        for name in ('three_cliques', 'star_of_rays', 'clique_star', 'timid_to_edge_demo'):
            p = load(name)
            assert check_alone_timid(p) == [], name
            assert check_timid_edge_separation(p) == [], name


BOUNDARY_SCRIPT = """
from endspace.Cuts import USpec, engine
from endspace.Spaces import rho_surjectivity_check
from endspace.catalog import load
p = load("star_of_rays")
assert "c:c" in engine(p).boundary_tU(USpec.parse("all-c:c")).explicit
assert rho_surjectivity_check(p, USpec.parse("all-c:c")).consistent
"""


class TestHashSeeds(unittest.TestCase):
    """U-boundaries do not depend on set iteration order"""

    def test_boundary_under_fixed_seeds(self):
        root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
        for seed in range(8):
            env = dict(os.environ, PYTHONHASHSEED=str(seed))
            proc = subprocess.Popen([sys.executable, '-c', BOUNDARY_SCRIPT], cwd=root, env=env,
                                    stdout=subprocess.PIPE, stderr=subprocess.PIPE)
            _, err = proc.communicate()
            assert proc.returncode == 0, (seed, err)


if __name__ == '__main__':
    unittest.main()
