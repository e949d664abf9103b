# -*- coding: utf-8 -*-
from __future__ import print_function
import sys
import logging

import networkx as nx

from endspace.FiniteGraph import UnresolvedRef, vertex_key, edge_name, split_edge, sort_vertices
from endspace.Presentation import INFINITE

VERTEX_SET = 'vertex'
EDGE_SET = 'edge'

RAYLESS = 'Rayless'
NON_RAYLESS = 'NonRayless'


class NonSkeletonSeparator(Exception):
    pass


class SizeCapExceeded(Exception):
    pass


class Separator(object):
    """A finite set of vertices or edges (edges named u|v) removed from the graph."""

    def __init__(self, kind, elements=()):
        if kind not in (VERTEX_SET, EDGE_SET):
            raise ValueError('Separator kind must be vertex or edge, got %s' % kind)
        self.kind = kind
        if kind == EDGE_SET:
            self.elements = sort_vertices(set(edge_name(*split_edge(e)) for e in elements))
        else:
            self.elements = sort_vertices(set(elements))

    def vertices(self):
        if self.kind == VERTEX_SET:
            return list(self.elements)
        result = set()
        for e in self.elements:
            result.update(split_edge(e))
        return sort_vertices(result)

    def union(self, other):
        assert self.kind == other.kind, 'Cannot join a %s separator with a %s separator' % (self.kind, other.kind)
        return Separator(self.kind, self.elements + other.elements)

    def issubset(self, other):
        return self.kind == other.kind and set(self.elements) <= set(other.elements)

    def key(self):
        return '%s{%s}' % (self.kind[0].upper(), ','.join(self.elements))

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, Separator) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return 'Separator(%s)' % self.key()


class ComponentRecord(object):
    """
    One component of G minus F, or (multiplicity omega) an omega-family of isomorphic components hiding in a
    shattered rest node.
    """

    def __init__(self, id, representative, residues, size, rays, multiplicity=1, nodes=()):
        self.id = id
        self.representative = representative
        self.residues = list(residues)
        self.size = size
        self.rays = rays
        self.multiplicity = multiplicity
        self.nodes = frozenset(nodes)

    @property
    def infinite(self):
        return self.size == INFINITE

    @property
    def size_class(self):
        return 'Infinite' if self.infinite else 'Finite(%d)' % self.size

    @property
    def ray_class(self):
        return NON_RAYLESS if self.rays else RAYLESS

    def __repr__(self):
        return 'ComponentRecord(%s, %s, %s, %s%s)' % (self.id, self.representative, self.size_class,
                                                      self.ray_class,
                                                      ', omega copies' if self.multiplicity != 1 else '')

    def to_document(self):
        return {'id': self.id, 'representative': self.representative,
                'residues': [list(r) for r in self.residues],
                'size_class': self.size_class, 'ray_class': self.ray_class,
                'multiplicity': 'omega' if self.multiplicity != 1 else 1}


def cut_skeleton(s, F):
    """The skeleton graph minus F, whose elements must be concrete nodes or unit arc edges of s."""
    h = s.graph.copy()
    if F.kind == VERTEX_SET:
        for v in F.elements:
            if not s.is_concrete(v):
                raise UnresolvedRef('%s is not an explicit vertex of the skeleton of %s' % (v, s.source))
        h.remove_nodes_from(F.elements)
        return h
    for e in F.elements:
        if e not in s.edge_arcs:
            raise UnresolvedRef('%s is not a unit arc edge of the skeleton of %s' % (e, s.source))
        u, v = s.edge_arcs[e]
        if not h.has_edge(u, v):
            continue
        left = [x for x in h.edges[u, v]['edges'] if x != e]
        if left:
            h.edges[u, v]['edges'] = left
        else:
            h.remove_edge(u, v)
    return h


class Separation(object):
    """
    Components of G minus a finite separator, computed on the skeleton made explicit around the separator.
    """
    Size_cap = 10 ** 6

    def __init__(self, p, size_cap=None):
        self.p = p
        self.size_cap = size_cap if size_cap is not None else self.Size_cap

    def _removed_edges(self, s, F):
        labels = None
        removed = []
        for e in F.elements:
            if e in s.edge_arcs:
                removed.append(e)
                continue
            u, v = split_edge(e)
            if not self.p.adjacent(u, v):
                raise UnresolvedRef('%s is not an edge of %s' % (e, self.p.name))
            if labels is None:
                from endspace.Cuts import omega_labels
                labels = omega_labels(s)
            if u in labels and v in labels and labels[u] == labels[v]:
                logging.info('Edge %s lies inside an omega-connected part of %s, ignored' % (e, self.p.name))
                continue
            raise NonSkeletonSeparator('Edge %s of %s is not carried by a unit arc of the skeleton' % (e, self.p.name))
        return removed

    def remainder(self, F, focus=()):
        """:return: (skeleton, networkx graph of the skeleton minus F)"""
        for v in F.vertices():
            self.p.resolve(v)
        s = self.p.skeleton(F.vertices() + list(focus))
        if F.kind == EDGE_SET:
            F = Separator(EDGE_SET, self._removed_edges(s, F))
        return s, cut_skeleton(s, F)

    def components(self, F, infinite_only=False, focus=()):
        s, h = self.remainder(F, focus)
        records = []
        for comp in nx.connected_components(h):
            rec = self._record(s, comp)
            if rec is not None and (rec.infinite or not infinite_only):
                records.append(rec)
        records.sort(key=lambda r: (vertex_key(r.representative), r.multiplicity != 1))
        for i, rec in enumerate(records):
            rec.id = 'C%d' % i
        return records

    def _record(self, s, comp):
        concrete = sort_vertices(n for n in comp if s.is_concrete(n))
        regions = sort_vertices(n for n in comp if not s.is_concrete(n))
        residues = [(s.attr(n, 'owner'), n) for n in regions]
        if not concrete and len(regions) == 1 and s.attr(regions[0], 'shatter'):
            rest = regions[0]
            size = s.attr(rest, 'copy_size')
            return ComponentRecord(None, s.representative(rest), residues, INFINITE if size is None else size,
                                   bool(s.attr(rest, 'copy_rays')), INFINITE, comp)
        infinite = [n for n in regions if s.attr(n, 'infinite', True)]
        if not concrete and not infinite:
            return None
        rays = any(s.attr(n, 'rays') for n in comp)
        if infinite:
            size = INFINITE
        else:
            size = len(concrete)
            if size > self.size_cap:
                raise SizeCapExceeded('Finite component of %d vertices exceeds the cap %d' % (size, self.size_cap))
        representative = concrete[0] if concrete else s.representative(regions[0])
        return ComponentRecord(None, representative, residues, size, rays, 1, comp)

    def component_of(self, F, v):
        """The record of G minus F containing vertex v, computed with v made explicit."""
        if v in F.vertices() and F.kind == VERTEX_SET:
            raise UnresolvedRef('%s is removed by %s' % (v, F.key()))
        for rec in self.components(F, focus=[v]):
            if v in rec.nodes:
                return rec
        raise UnresolvedRef('%s does not lie in a component of G minus %s' % (v, F.key()))

    def transition(self, small, large, focus=()):
        """
        Maps every component of G minus `large` to the unique component of G minus `small` containing it.

        :return: dict large record id -> small record id, plus both record lists
        """
        assert small.issubset(large), '%s is not contained in %s' % (small.key(), large.key())
        extra = large.vertices() + list(focus)
        fine = self.components(large, focus=extra)
        coarse = self.components(small, focus=extra)
        where = {}
        for rec in coarse:
            for n in rec.nodes:
                where[n] = rec.id
        mapping = {}
        for rec in fine:
            targets = set(where[n] for n in rec.nodes if n in where)
            assert len(targets) == 1, 'Component %s of G minus %s meets %d components of G minus %s' % \
                (rec.representative, large.key(), len(targets), small.key())
            mapping[rec.id] = targets.pop()
        return mapping, fine, coarse


def components(p, F, infinite_only=False):
    return Separation(p).components(F, infinite_only)


def edge_components(p, F):
    """The infinite components only, as used by edge-end and edge-direction spaces."""
    return Separation(p).components(F, infinite_only=True)


def classify_rayless(c):
    return c.ray_class


def components_finite(t, F):
    """
    Exact components of the truncation graph minus F.

    :return: list of (sorted vertex list, touches_frontier)
    """
    g = t.graph
    if F.kind == VERTEX_SET:
        for v in F.elements:
            if v not in g:
                raise UnresolvedRef('%s is not a vertex of the depth %d truncation' % (v, t.depth))
        h = g.without_vertices(F.elements)
    else:
        pairs = [split_edge(e) for e in F.elements]
        for u, v in pairs:
            if not g.has_edge(u, v):
                raise UnresolvedRef('%s|%s is not an edge of the depth %d truncation' % (u, v, t.depth))
        h = g.without_edges(pairs)
    return [(comp, any(v in t.frontier for v in comp)) for comp in h.components()]


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    from endspace.catalog import load
    p = load('star_of_rays')
    for rec in components(p, Separator(VERTEX_SET, ['c:c'])):
        print(rec)
