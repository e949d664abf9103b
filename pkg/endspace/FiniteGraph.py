# -*- coding: utf-8 -*-
import re

import networkx as nx


class SchemaError(Exception):
    pass


class DanglingRef(Exception):
    pass


class LoopEdge(Exception):
    pass


class UnresolvedRef(Exception):
    pass


_natural = re.compile(r'(\d+)')


def vertex_key(name):
    """
    Canonical sort key of a vertex (or any identifier built from ':' separated parts). Numeric runs compare
    as integers, so g:r:10 sorts after g:r:9. The name itself is the final tie-break, which keeps the order total.
    """
    parts = _natural.split(name)
    key = []
    for i, part in enumerate(parts):
        if i % 2 == 1:
            key.append((0, int(part), ''))
        elif part != '':
            key.append((1, 0, part))
    return tuple(key), name


def edge_key(u, v):
    if vertex_key(u) <= vertex_key(v):
        return u, v
    return v, u


def edge_name(u, v):
    a, b = edge_key(u, v)
    return '%s|%s' % (a, b)


def split_edge(name):
    if '|' not in name:
        raise UnresolvedRef('Not an edge name: %s' % name)
    a, b = name.split('|', 1)
    return a, b


def sort_vertices(vertices):
    return sorted(vertices, key=vertex_key)


def sort_edges(edges):
    return sorted(edges, key=lambda e: (vertex_key(e[0]), vertex_key(e[1])))


class FiniteGraph(object):
    """
    A finite simple undirected graph over string vertex names. Instances are immutable after construction;
    every derived graph (minus, induced, ...) is a new object.
    """

    def __init__(self, vertices=(), edges=()):
        self._adj = {}
        for v in vertices:
            self._adj.setdefault(v, set())
        for u, v in edges:
            if u == v:
                raise LoopEdge('Loop at vertex %s' % u)
            if u not in self._adj or v not in self._adj:
                raise DanglingRef('Edge %s references an undeclared vertex' % edge_name(u, v))
            self._adj[u].add(v)
            self._adj[v].add(u)
        self._vertices = None
        self._edges = None

    @property
    def vertices(self):
        if self._vertices is None:
            self._vertices = sort_vertices(self._adj.keys())
        return self._vertices

    @property
    def edges(self):
        if self._edges is None:
            result = set()
            for u, nbrs in self._adj.items():
                for v in nbrs:
                    result.add(edge_key(u, v))
            self._edges = sort_edges(result)
        return self._edges

    def __len__(self):
        return len(self._adj)

    def __contains__(self, v):
        return v in self._adj

    def __eq__(self, other):
        return isinstance(other, FiniteGraph) and self._adj == other._adj

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'FiniteGraph(|V|=%d, |E|=%d)' % (len(self._adj), len(self.edges))

    def has_edge(self, u, v):
        return u in self._adj and v in self._adj[u]

    def neighbors(self, v):
        if v not in self._adj:
            raise UnresolvedRef('Vertex %s not in graph' % v)
        return sort_vertices(self._adj[v])

    def degree(self, v):
        if v not in self._adj:
            raise UnresolvedRef('Vertex %s not in graph' % v)
        return len(self._adj[v])

    def induced(self, vertices):
        keep = set(vertices)
        return FiniteGraph(keep, [(u, v) for u, v in self.edges if u in keep and v in keep])

    def without_vertices(self, vertices):
        drop = set(vertices)
        return self.induced([v for v in self._adj if v not in drop])

    def without_edges(self, edges):
        drop = set(edge_key(u, v) for u, v in edges)
        return FiniteGraph(self._adj.keys(), [e for e in self.edges if e not in drop])

    def is_induced_subgraph_of(self, other):
        for v in self._adj:
            if v not in other:
                return False
        for u, v in other.edges:
            if u in self._adj and v in self._adj and not self.has_edge(u, v):
                return False
        for u, v in self.edges:
            if not other.has_edge(u, v):
                return False
        return True

    def components(self):
        comps = [sort_vertices(c) for c in nx.connected_components(self.to_networkx())]
        return sorted(comps, key=lambda c: vertex_key(c[0]))

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    @staticmethod
    def from_networkx(g):
        return FiniteGraph(list(g.nodes()), list(g.edges()))
