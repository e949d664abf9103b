# -*- coding: utf-8 -*-
from __future__ import print_function
import itertools
import logging
import sys

from endspace.Cuts import engine, omega_labels, ray_nodes
from endspace.FiniteGraph import FiniteGraph, UnresolvedRef, edge_key, edge_name, split_edge, sort_vertices
from endspace.Presentation import INFINITE, Truncation, OMEGA_CLIQUE
from endspace.Separation import Separator, Separation, VERTEX_SET
from endspace.Skeleton import SkeletonGraphBuilder, Seed, JUNCTION, SINGLETON
from endspace.Transforms import TransformResult, DerivedPresentation, NotTimid


class DominationUndecidable(Exception):
    pass


def slot(v, u):
    """The vertex u^v of the clique replacing dominating v, standing for its edge to u."""
    return 'k:%s/%s' % (v, u)


def parse_slot(name):
    v, u = name[2:].split('/', 1)
    return v, u


def is_slot(name):
    return name.startswith('k:') and '/' in name


class HGraphPresentation(DerivedPresentation):
    """
    H_G: every edge-dominating vertex v is replaced by a clique on its slots u^v, one per neighbor u. Edges between
    two timid vertices are kept; a timid u is joined to u^v and two dominating neighbors by the edge v^u u^v.
    """
    rule = 'hgraph'

    def __init__(self, base, name=None):
        DerivedPresentation.__init__(self, base, name)
        self._dominating = {}
        self._check_explicit()

    def dominating(self, v):
        if v not in self._dominating:
            ref = self.base.resolve(v)
            if self.base.degree(v) != INFINITE:
                self._dominating[v] = False
            elif getattr(ref, 'kind', None) == 'gadget' and \
                    self.base.gadget_by_id[ref.owner].kind == OMEGA_CLIQUE:
                self._dominating[v] = True
            else:
                self._dominating[v] = engine(self.base).dominating(v)
        return self._dominating[v]

    def _check_explicit(self):
        """The base skeleton and the focused cut engine must agree on which explicit vertices dominate."""
        s = self.base.skeleton()
        labels = omega_labels(s)
        rays = set(labels[n] for n in ray_nodes(s))
        for v in s.concrete_nodes():
            if not s.infinite_degree(v):
                continue
            coarse = labels[v] in rays
            if coarse != self.dominating(v):
                raise DominationUndecidable('Domination of %s in %s differs between the base skeleton (%s) and '
                                            'the focused cut (%s)' % (v, self.base.name, coarse, not coarse))

    def translate(self, u, v):
        """The H-vertex at the u end of the G-edge uv."""
        if self.dominating(u):
            return slot(u, v)
        return u

    def resolve(self, name):
        if is_slot(name):
            v, u = parse_slot(name)
            if not self.dominating(v):
                raise UnresolvedRef('%s names a slot of %s, which does not dominate' % (name, v))
            if not self.base.adjacent(v, u):
                raise UnresolvedRef('%s names a slot of a non-edge %s' % (name, edge_name(v, u)))
            return v, u
        self.base.resolve(name)
        if self.dominating(name):
            raise UnresolvedRef('%s dominates and is replaced by a clique in %s' % (name, self.name))
        return name, None

    def depth_of(self, name):
        if is_slot(name):
            v, u = parse_slot(name)
            return max(self.base.depth_of(v), self.base.depth_of(u))
        return self.base.depth_of(name)

    def neighbor_parts(self, name):
        v, u = self.resolve(name)
        if u is None:
            finite, streams = self.mapped_parts(v, lambda w: self.translate(w, v))
            return sort_vertices(set(finite)), streams
        finite, streams = self.mapped_parts(v, lambda w: slot(v, w), skip=[u])
        finite.append(self.translate(u, v))
        return sort_vertices(set(finite)), streams

    def truncate(self, n):
        t = self.base.truncate(n)
        graph = h_graph_finite(t.graph, self.dominating)
        return Truncation(n, graph, self.frontier_of(graph), self.name)

    def build_skeleton(self, focus):
        base_focus = set()
        for name in focus:
            if is_slot(name):
                base_focus.update(parse_slot(name))
            else:
                base_focus.add(name)
        return HSkeletonBuilder(self, self.base.skeleton(sort_vertices(base_focus))).build()

    def theta(self, e):
        """theta: E(G) -> E(H_G)."""
        u, w = split_edge(e)
        return edge_name(self.translate(u, w), self.translate(w, u))

    def theta_walk(self, walk):
        """Translates a G-walk into an H-walk: a dominating v_i is crossed from v_{i-1}^{v_i} to v_{i+1}^{v_i}."""
        result = []
        for i, v in enumerate(walk):
            if not self.dominating(v):
                steps = [v]
            else:
                steps = []
                if i > 0:
                    steps.append(slot(v, walk[i - 1]))
                if i + 1 < len(walk):
                    steps.append(slot(v, walk[i + 1]))
            for x in steps:
                if not result or result[-1] != x:
                    result.append(x)
        return result


def h_graph_finite(g, dominating):
    """H of a finite graph for a given domination predicate."""
    vertices = set()
    edges = set()
    for v in g.vertices:
        if dominating(v):
            slots = [slot(v, u) for u in g.neighbors(v)]
            vertices.update(slots)
            edges.update(edge_key(a, b) for a, b in itertools.combinations(slots, 2))
        else:
            vertices.add(v)
    for u, w in g.edges:
        a = slot(u, w) if dominating(u) else u
        b = slot(w, u) if dominating(w) else w
        edges.add(edge_key(a, b))
    return FiniteGraph(vertices, edges)


class HSkeletonBuilder(SkeletonGraphBuilder):
    """
    Skeleton of H_G from the base skeleton: an explicit dominating x becomes the junction k:x, its explicit
    edges become explicit slots joined to k:x by omega arcs; regions keep their names.
    """

    def __init__(self, hp, bs):
        SkeletonGraphBuilder.__init__(self)
        self.hp = hp
        self.bs = bs

    def node_of(self, n):
        if self.bs.is_concrete(n) and self.hp.dominating(n):
            return 'k:%s' % n
        return n

    def build(self):
        bs = self.bs
        hp = self.hp
        for r in bs.region_nodes():
            data = dict(bs.graph.nodes[r])
            data.pop('kind')
            self.region(r, bs.kind(r), **data)
        dominating = []
        for x in bs.concrete_nodes():
            if hp.dominating(x):
                dominating.append(x)
                self.region('k:%s' % x, JUNCTION, x, 'k:%s' % x, rays=True, absorbing=True)
            else:
                self.vertex(x)
        for e in bs.unit_arcs():
            a, b = bs.edge_arcs[e]
            u, w = split_edge(e)
            ends = []
            for node in (a, b):
                hidden = bs.hidden_endpoint(e, node)
                x = hidden if hidden is not None else node
                other = w if x == u else u
                if hidden is None and hp.dominating(x):
                    s = self.vertex(slot(x, other))
                    self.omega(s, 'k:%s' % x)
                    ends.append((s, s))
                elif hidden is not None:
                    ends.append((node, hp.translate(x, other)))
                else:
                    ends.append((x, x))
            (na, va), (nb, vb) = ends
            self.unit(na, nb, edge_name(va, vb))
        for a, b, data in bs.graph.edges(data=True):
            if data.get('omega'):
                self.omega(self.node_of(a), self.node_of(b))
        for seed in bs.seeds + bs.hub_seeds:
            target = self.seeds if seed in bs.seeds else self.hub_seeds
            target.append(Seed(seed.id, seed.shape, seed.owner,
                               [(label, self.node_of(n)) for label, n in seed.members],
                               [(label, self.node_of(n)) for label, n in seed.rests]))
        for x in dominating:
            self.seeds.append(Seed('k:%s' % x, SINGLETON, x, [('', 'k:%s' % x)]))
        return SkeletonGraphBuilder.build(self, self.hp.name, bs.window)


def h_graph(p):
    hp = HGraphPresentation(p)
    dominating = engine(p).dominating_vertices()
    logging.info('H_G of %s: %d explicit dominating vertices replaced by cliques' % (p.name, len(dominating)))
    return TransformResult('hgraph', hp, vertex_map=lambda v: 'k:%s' % v if hp.dominating(v) else v,
                           edge_map=hp.theta, point_map=lambda x: x,
                           separator_map=lambda F: F,
                           rules={'vertex_map': 'dominating v -> clique k:v, others fixed',
                                  'edge_map': 'theta: uw -> (u or u^w)(w or w^u)',
                                  'point_map': 'identity on point ids',
                                  'separator_map': 'identity on timid vertex separators'},
                           source=p.name)


def slot_focus(p):
    """For every explicit dominating v one slot per explicit neighbor arc: (v, u) pairs."""
    s = p.skeleton()
    hp = HGraphPresentation(p)
    result = []
    for v in s.concrete_nodes():
        if not hp.dominating(v):
            continue
        for n in sort_vertices(s.graph.neighbors(v)):
            if s.is_concrete(n):
                result.append((v, n))
            else:
                first = s.representative(n)
                if first is not None and p.adjacent(v, first):
                    result.append((v, first))
    return hp, result


def dominant_component_failures(p):
    """Removing one slot u^v of a dominating v from H_G leaves at most two components."""
    hp, pairs = slot_focus(p)
    sep = Separation(hp)
    failures = []
    for v, u in pairs:
        if not hp.skeleton([slot(v, u)]).is_concrete(slot(v, u)):
            logging.info('Slot %s lies inside a clique region of %s, skipped' % (slot(v, u), hp.name))
            continue
        records = sep.components(Separator(VERTEX_SET, [slot(v, u)]))
        count = sum(INFINITE if r.multiplicity != 1 else 1 for r in records)
        if count > 2:
            failures.append((slot(v, u), count))
    return failures


class ComponentBijection(object):
    def __init__(self, F, mapping, g_records, h_records, failures):
        self.F = F
        self.mapping = mapping
        self.g_records = g_records
        self.h_records = h_records
        self.failures = failures

    @property
    def passed(self):
        return not self.failures

    def to_document(self):
        return {'separator': self.F.key(), 'mapping': self.mapping, 'passed': self.passed,
                'failures': self.failures}


def _witness(hp, s, rec):
    """An H-node standing for component rec of G minus F."""
    concrete = [n for n in sort_vertices(rec.nodes) if s.is_concrete(n)]
    timid = [n for n in concrete if not hp.dominating(n)]
    if timid:
        return timid[0]
    regions = [n for n in sort_vertices(rec.nodes) if not s.is_concrete(n)]
    if regions:
        return regions[0]
    return 'k:%s' % concrete[0]


def component_bijection(p, F):
    """
    Checks that C -> C_H is a bijection between the non-rayless components of G minus F and of H_G minus F, for a
    finite set F of timid vertices.
    """
    e = engine(p)
    for v in F:
        if not e.timid(v):
            raise NotTimid('%s is not timid in %s' % (v, p.name))
    hp = HGraphPresentation(p)
    F = Separator(VERTEX_SET, F)
    g_records = [r for r in Separation(p).components(F) if r.rays]
    h_records = [r for r in Separation(hp).components(F) if r.rays]
    s = p.skeleton(F.vertices())
    mapping = {}
    failures = []
    for rec in g_records:
        w = _witness(hp, s, rec)
        found = [h for h in h_records if w in h.nodes and (h.multiplicity != 1) == (rec.multiplicity != 1)]
        if len(found) != 1:
            failures.append((rec.representative, w, len(found)))
            continue
        mapping[rec.id] = found[0].id
    images = list(mapping.values())
    if len(set(images)) != len(images):
        failures.append(('not injective', sorted(images)))
    missed = [h.id for h in h_records if h.id not in images]
    if missed:
        failures.append(('not surjective', missed))
    result = ComponentBijection(F, mapping, g_records, h_records, failures)
    logging.info('Component bijection of %s at %s: %d -> %d records, %s' %
                 (p.name, F.key(), len(g_records), len(h_records), 'ok' if result.passed else failures))
    return result


def check_hgraph_ends(p, **kwargs):
    """Ends of H_G against the edge-ends of G, identity on point ids, open-set mode."""
    from endspace.Spaces import Spaces, correspondence_check, identity_map
    edge_ends = Spaces(p, **kwargs).edge_ends()
    ends = Spaces(HGraphPresentation(p), **kwargs).ends()
    return correspondence_check(edge_ends, ends, identity_map(edge_ends))


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    from endspace.catalog import load
    p = load('double_ray_dominator')
    print(h_graph(p).output.truncate(3).graph.vertices)
    print(dominant_component_failures(p))
    print(check_hgraph_ends(p))
