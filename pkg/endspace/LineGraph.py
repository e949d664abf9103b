# -*- coding: utf-8 -*-
from __future__ import print_function
import itertools
import logging
import sys

from endspace.FiniteGraph import FiniteGraph, UnresolvedRef, edge_key, edge_name, split_edge, sort_vertices
from endspace.Presentation import Truncation
from endspace.Separation import Separator, VERTEX_SET, EDGE_SET
from endspace.Skeleton import SkeletonGraphBuilder, Seed, JUNCTION, SINGLETON
from endspace.Transforms import TransformResult, DerivedPresentation


def line_vertex(u, w):
    a, b = edge_key(u, w)
    return 'l:%s/%s' % (a, b)


def line_vertex_of(e):
    return line_vertex(*split_edge(e))


def line_edge(name):
    """The G-edge (u, w) behind line vertex l:u/w."""
    if not name.startswith('l:') or '/' not in name:
        raise UnresolvedRef('Not a line graph vertex: %s' % name)
    u, w = name[2:].split('/', 1)
    return u, w


def line_separator(F):
    """F subset E(G) -> F' = {v_e : e in F}."""
    if F.kind != EDGE_SET:
        raise ValueError('Line graph separators are transported from edge separators, got %s' % F.key())
    return Separator(VERTEX_SET, [line_vertex_of(e) for e in F.elements])


def line_graph(g):
    """
    The line graph of a finite graph: one vertex l:u/w per edge, two of them adjacent iff the edges share an end.

    :param g: FiniteGraph
    :return: TransformResult with vertex_map edge name -> line vertex
    """
    vertices = [line_vertex(u, w) for u, w in g.edges]
    incident = {}
    for u, w in g.edges:
        incident.setdefault(u, []).append(line_vertex(u, w))
        incident.setdefault(w, []).append(line_vertex(u, w))
    edges = set()
    for x in sort_vertices(incident.keys()):
        for a, b in itertools.combinations(incident[x], 2):
            edges.add(edge_key(a, b))
    output = FiniteGraph(vertices, edges)
    vertex_map = dict((edge_name(u, w), line_vertex(u, w)) for u, w in g.edges)
    return TransformResult('line', output, vertex_map=vertex_map, separator_map=line_separator,
                           rules={'separator_map': 'F -> {l:e : e in F}'})


def component_correspondence_failures(g, F):
    """
    Compares the components of g minus the edge set F with those of its line graph minus F': two surviving edges
    share a component on one side iff their line vertices do on the other.
    """
    removed = set(edge_key(u, w) for u, w in F)
    rest = g.without_edges(removed)
    comp_of = {}
    for i, comp in enumerate(rest.components()):
        for v in comp:
            comp_of[v] = i
    lg = line_graph(g).output
    line_rest = lg.without_vertices([line_vertex(u, w) for u, w in removed])
    line_comp_of = {}
    for i, comp in enumerate(line_rest.components()):
        for v in comp:
            line_comp_of[v] = i
    surviving = [e for e in rest.edges]
    failures = []
    for e, f in itertools.combinations(surviving, 2):
        same = comp_of[e[0]] == comp_of[f[0]]
        line_same = line_comp_of[line_vertex(*e)] == line_comp_of[line_vertex(*f)]
        if same != line_same:
            failures.append((edge_name(*e), edge_name(*f)))
    return failures


class LineGraphPresentation(DerivedPresentation):
    """The line graph of an infinite graph, with adjacency, truncations and skeleton derived from the base."""
    rule = 'line'

    def resolve(self, v):
        u, w = line_edge(v)
        if line_vertex(u, w) != v:
            raise UnresolvedRef('Line vertex %s is not in canonical order' % v)
        if not self.base.adjacent(u, w):
            raise UnresolvedRef('%s is not an edge of %s' % (edge_name(u, w), self.base.name))
        return u, w

    def depth_of(self, v):
        u, w = line_edge(v)
        return max(self.base.depth_of(u), self.base.depth_of(w))

    def neighbor_parts(self, v):
        u, w = self.resolve(v)
        finite = []
        streams = []
        for x, other in ((u, w), (w, u)):
            f, s = self.mapped_parts(x, lambda y, x=x: line_vertex(x, y), skip=[other])
            finite.extend(f)
            streams.extend(s)
        return sort_vertices(set(finite)), streams

    def truncate(self, n):
        t = self.base.truncate(n)
        graph = line_graph(t.graph).output
        return Truncation(n, graph, self.frontier_of(graph), self.name)

    def build_skeleton(self, focus):
        base_focus = set()
        for v in focus:
            base_focus.update(line_edge(v))
        return LineSkeletonBuilder(self, self.base.skeleton(sort_vertices(base_focus))).build()


class LineSkeletonBuilder(SkeletonGraphBuilder):
    """
    Skeleton of the line graph from the base skeleton: every unit arc edge becomes an explicit node; the edges
    at an infinite-degree vertex x form an infinite clique, the junction region j:x; every base region R becomes
    the region j:R holding the line vertices of the edges hidden in it.
    """

    def __init__(self, lp, bs):
        SkeletonGraphBuilder.__init__(self)
        self.lp = lp
        self.bs = bs

    def node_of(self, n):
        return 'j:%s' % n

    def build(self):
        bs = self.bs
        for r in bs.region_nodes():
            data = bs.graph.nodes[r]
            self.region(self.node_of(r), data['kind'], data.get('owner'), self.node_of(r), data.get('rays'),
                        data.get('shatter', False), None, data.get('copy_rays', False), data.get('infinite', True),
                        data.get('absorbing', False))
        incident = {}
        for e in bs.unit_arcs():
            self.vertex(line_vertex_of(e))
            for x in split_edge(e):
                incident.setdefault(x, []).append(e)
        for x in bs.concrete_nodes():
            at_x = incident.get(x, [])
            if bs.infinite_degree(x):
                junction = self.region(self.node_of(x), JUNCTION, x, self.node_of(x), rays=True, absorbing=True)
                for e in at_x:
                    self.omega(line_vertex_of(e), junction)
            else:
                for e, f in itertools.combinations(at_x, 2):
                    self.unit(line_vertex_of(e), line_vertex_of(f))
        for e in bs.unit_arcs():
            u, v = bs.edge_arcs[e]
            for node in (u, v):
                hidden = bs.hidden_endpoint(e, node)
                if hidden is not None:
                    self._hidden_side(e, hidden, node)
        for u, v, data in bs.graph.edges(data=True):
            if data.get('omega'):
                self.omega(self.node_of(u), self.node_of(v))
        self._seeds()
        return SkeletonGraphBuilder.build(self, self.lp.name, bs.window)

    def _hidden_side(self, e, y, region):
        """Line neighbors of l:e through its end y hidden in `region`."""
        bs = self.bs
        finite, streams = self.lp.base.neighbor_parts(y)
        x = [a for a in split_edge(e) if a != y][0]
        le = line_vertex_of(e)
        if streams:
            self.omega(le, self.node_of(region))
            return
        for z in finite:
            if z == x:
                continue
            f = edge_name(y, z)
            if f in bs.edge_arcs:
                self.unit(le, line_vertex_of(f))
            else:
                self.unit(le, self.node_of(region), edge_name(le, line_vertex_of(f)))

    def _seeds(self):
        bs = self.bs
        for seed in bs.seeds + bs.hub_seeds:
            self.seeds.append(Seed(seed.id, seed.shape, seed.owner,
                                   [(label, self.node_of(n)) for label, n in seed.members],
                                   [(label, self.node_of(n)) for label, n in seed.rests]))
        for x in bs.concrete_nodes():
            if bs.infinite_degree(x):
                self.seeds.append(Seed('hub:%s' % x, SINGLETON, x, [('', self.node_of(x))]))


def line_graph_presentation(p):
    lp = LineGraphPresentation(p)
    logging.info('Line graph of %s built lazily' % p.name)
    return TransformResult('line', lp, vertex_map=line_vertex_of, separator_map=line_separator,
                           point_map=lambda x: x,
                           rules={'vertex_map': 'u|w -> l:u/w', 'separator_map': 'F -> {l:e : e in F}',
                                  'point_map': 'identity on point ids'},
                           source=p.name)


def check_line_directions(p, **kwargs):
    """Edge-directions of p against the ends of its line graph, transporting every edge separator F to F'."""
    from endspace.Spaces import Spaces, correspondence_check, identity_map
    directions = Spaces(p, **kwargs).edge_directions()
    ends = Spaces(LineGraphPresentation(p), **kwargs).ends()
    if sorted(directions.ids()) != sorted(ends.ids()):
        logging.warning('Direction points of %s %s differ from line graph ends %s' %
                        (p.name, directions.ids(), ends.ids()))
    return correspondence_check(directions, ends, identity_map(directions), sep_map=line_separator)


def direction_accumulation_failures(p, **kwargs):
    """Omega-families of the edge-direction summary of a connected p without any accumulation point."""
    from endspace.Spaces import Spaces
    d = Spaces(p, **kwargs).edge_directions()
    return [S.id for S in d.families() if not d.accumulation_points(S.id)]


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    k4 = FiniteGraph('abcd', itertools.combinations('abcd', 2))
    print(line_graph(k4).output)
    from endspace.catalog import load
    print(check_line_directions(load('star_of_rays')))
