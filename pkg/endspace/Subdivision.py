# -*- coding: utf-8 -*-
from __future__ import print_function
import logging
import sys

from endspace.Cuts import engine
from endspace.FiniteGraph import FiniteGraph, UnresolvedRef, edge_key, edge_name, split_edge, sort_vertices
from endspace.Presentation import Truncation, parse_presentation
from endspace.Separation import Separator, VERTEX_SET, EDGE_SET
from endspace.Skeleton import SkeletonGraphBuilder
from endspace.Transforms import TransformResult, DerivedPresentation, require_declarative


def subdivision_vertex(u, w):
    a, b = edge_key(u, w)
    return 's:%s/%s' % (a, b)


def subdivision_vertex_of(e):
    return subdivision_vertex(*split_edge(e))


def subdivided_edge(name):
    u, w = name[2:].split('/', 1)
    return u, w


def subdivide_graph(g):
    vertices = list(g.vertices)
    edges = []
    for u, w in g.edges:
        x = subdivision_vertex(u, w)
        vertices.append(x)
        edges.append((u, x))
        edges.append((x, w))
    return FiniteGraph(vertices, edges)


def subdivision_separator(F):
    """Edge separator F of G -> the vertex separator of the subdivision vertices of F."""
    if F.kind != EDGE_SET:
        raise ValueError('Subdivision separators are transported from edge separators, got %s' % F.key())
    return Separator(VERTEX_SET, [subdivision_vertex_of(e) for e in F.elements])


class SubdivisionPresentation(DerivedPresentation):
    """The graph with one new vertex s:u/w on every edge uw."""
    rule = 'subdivide'

    def resolve(self, v):
        if v.startswith('s:') and '/' in v:
            u, w = subdivided_edge(v)
            if subdivision_vertex(u, w) != v or not self.base.adjacent(u, w):
                raise UnresolvedRef('%s is not the subdivision vertex of an edge of %s' % (v, self.base.name))
            return u, w
        return self.base.resolve(v)

    def depth_of(self, v):
        if v.startswith('s:'):
            u, w = subdivided_edge(v)
            return max(self.base.depth_of(u), self.base.depth_of(w))
        return self.base.depth_of(v)

    def neighbor_parts(self, v):
        if v.startswith('s:'):
            u, w = self.resolve(v)
            return sort_vertices([u, w]), []
        finite, streams = self.mapped_parts(v, lambda u: subdivision_vertex(v, u))
        return sort_vertices(finite), streams

    def truncate(self, n):
        graph = subdivide_graph(self.base.truncate(n).graph)
        return Truncation(n, graph, self.frontier_of(graph), self.name)

    def build_skeleton(self, focus):
        base_focus = set()
        for v in focus:
            if v.startswith('s:'):
                base_focus.update(subdivided_edge(v))
            else:
                base_focus.add(v)
        return SubdivisionSkeletonBuilder(self, self.base.skeleton(sort_vertices(base_focus))).build()


class SubdivisionSkeletonBuilder(SkeletonGraphBuilder):
    def __init__(self, sp, bs):
        SkeletonGraphBuilder.__init__(self)
        self.sp = sp
        self.bs = bs

    def _copy_size(self, data):
        """A copy of a finite pattern gains one vertex per internal and per host edge."""
        f = getattr(self.sp.base, 'family_by_id', {}).get(data.get('owner'))
        if data.get('copy_size') is None or f is None or not f.pattern.finite:
            return data.get('copy_size')
        return data['copy_size'] + len(f.pattern.edges_at_depth(1)) + len(f.per_copy_edges)

    def build(self):
        bs = self.bs
        for r in bs.region_nodes():
            data = dict(bs.graph.nodes[r])
            data.pop('kind')
            data['copy_size'] = self._copy_size(data)
            self.region(r, bs.kind(r), **data)
        for x in bs.concrete_nodes():
            self.vertex(x)
        for e in bs.unit_arcs():
            a, b = bs.edge_arcs[e]
            u, w = split_edge(e)
            x = self.vertex(subdivision_vertex(u, w))
            for node in (a, b):
                hidden = bs.hidden_endpoint(e, node)
                self.unit(node, x, edge_name(hidden if hidden is not None else node, x))
        for a, b, data in bs.graph.edges(data=True):
            if data.get('omega'):
                self.omega(a, b)
        self.seeds.extend(bs.seeds)
        self.hub_seeds.extend(bs.hub_seeds)
        return SkeletonGraphBuilder.build(self, self.sp.name, bs.window)


def subdivide(p):
    sp = SubdivisionPresentation(p)
    logging.info('Subdivision of %s built lazily' % p.name)
    return TransformResult('subdivide', sp, vertex_map=subdivision_vertex_of, separator_map=subdivision_separator,
                           point_map=lambda x: x,
                           rules={'vertex_map': 'u|w -> s:u/w', 'separator_map': 'F -> {s:e : e in F}',
                                  'point_map': 'identity on point ids'},
                           source=p.name)


def check_subdivision_timid_ends(p, **kwargs):
    """Edge-ends of G against the timid ends of its subdivision, transporting F to its subdivision vertices."""
    from endspace.Spaces import Spaces, correspondence_check, identity_map
    edge_ends = Spaces(p, **kwargs).edge_ends()
    timid_ends = Spaces(SubdivisionPresentation(p), **kwargs).timid_ends()
    return correspondence_check(edge_ends, timid_ends, identity_map(edge_ends), sep_map=subdivision_separator)


def _host_document(p, v):
    """The host declaration reaching vertex v, or None when v is not a core vertex or a gadget position."""
    ref = p.resolve(v)
    if ref.kind == 'core':
        return ref.owner
    if ref.kind == 'gadget' and len(ref.index) == 1:
        return {'gadget': ref.owner, 'position': ref.index[0]}
    return None


def timid_to_edge(p):
    """
    Attaches a SingleVertex omega-family to both ends of every explicit edge outside E_t whose ends are not
    already ~E, so that edge-ends of the result are the timid ends of p.
    """
    require_declarative(p, 'timid_to_edge')
    e = engine(p)
    s = p.skeleton()
    doc = p.to_document()
    added = []
    for edge in s.unit_arcs():
        if e.in_E_t(edge):
            continue
        u, w = split_edge(edge)
        if e.sim_E(u, w):
            continue
        hosts = [_host_document(p, u), _host_document(p, w)]
        if None in hosts:
            logging.warning('Edge %s of %s has an end no family can attach to, left as is' % (edge, p.name))
            continue
        fid = 'te%d' % len(added)
        while fid in p.family_by_id or fid in p.gadget_by_id:
            fid += '_'
        doc['families'].append({'id': fid, 'pattern': 'SingleVertex',
                                'per_copy_edges': [['0', hosts[0]], ['0', hosts[1]]]})
        added.append(edge)
    if not added:
        return TransformResult('timid2edge', p, point_map=lambda x: x, rules={'point_map': 'identity'},
                               source=p.name)
    doc['name'] = 'timid2edge(%s)' % p.name
    output = parse_presentation(doc)
    logging.info('timid_to_edge on %s: %d edges outside E_t received families' % (p.name, len(added)))
    return TransformResult('timid2edge', output, point_map=lambda x: x,
                           rules={'point_map': 'identity on point ids', 'edges': ', '.join(added)},
                           source=p.name)


def check_timid_to_edge(p, **kwargs):
    """Timid ends of G against the edge-ends of timid_to_edge(G), identity on point ids, open-set mode."""
    from endspace.Spaces import Spaces, correspondence_check, identity_map
    timid_ends = Spaces(p, **kwargs).timid_ends()
    edge_ends = Spaces(timid_to_edge(p).output, **kwargs).edge_ends()
    return correspondence_check(timid_ends, edge_ends, identity_map(timid_ends))


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    from endspace.catalog import load
    p = load('two_cliques_bridge')
    print(timid_to_edge(p).output.dumps())
    print(check_subdivision_timid_ends(p))
    print(check_timid_to_edge(p))
