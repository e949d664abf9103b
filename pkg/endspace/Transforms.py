# -*- coding: utf-8 -*-
from __future__ import print_function
import sys
import logging

import networkx as nx

from endspace.FiniteGraph import FiniteGraph, SchemaError, sort_vertices, vertex_key
from endspace.Presentation import InfiniteGraph, Presentation, parse_presentation


class NotTimid(Exception):
    pass


class TransformResult(object):
    """
    Output of one graph construction together with its correspondences. Maps are plain dicts on finite domains
    and callables on symbolic ones; `rules` names the rule behind every callable map for the JSON export.
    """

    def __init__(self, op, output, vertex_map=None, edge_map=None, point_map=None, separator_map=None, rules=None,
                 source=None):
        self.op = op
        self.output = output
        self.vertex_map = vertex_map
        self.edge_map = edge_map
        self.point_map = point_map
        self.separator_map = separator_map
        self.rules = dict(rules or {})
        self.source = source

    def __repr__(self):
        return 'TransformResult(%s, %s)' % (self.op, getattr(self.output, 'name', self.output))

    def map_vertex(self, v):
        if self.vertex_map is None:
            return v
        if callable(self.vertex_map):
            return self.vertex_map(v)
        return self.vertex_map.get(v, v)

    def map_edge(self, e):
        if self.edge_map is None:
            return e
        if callable(self.edge_map):
            return self.edge_map(e)
        return self.edge_map.get(e)

    def map_separator(self, F):
        if self.separator_map is None:
            return F
        return self.separator_map(F)

    def _table(self, m, name):
        if m is None:
            return 'identity'
        if callable(m):
            return self.rules.get(name, 'rule')
        return dict((k, m[k]) for k in sort_vertices(m.keys()))

    def to_document(self):
        output = self.output
        if isinstance(output, FiniteGraph):
            out_doc = {'vertices': output.vertices, 'edges': [list(e) for e in output.edges]}
        else:
            out_doc = output.to_document()
        return {'op': self.op,
                'source': self.source,
                'output': out_doc,
                'vertex_map': self._table(self.vertex_map, 'vertex_map'),
                'edge_map': self._table(self.edge_map, 'edge_map'),
                'point_map': self._table(self.point_map, 'point_map'),
                'separator_map': self.rules.get('separator_map', 'identity')}


class DerivedPresentation(InfiniteGraph):
    """An infinite graph defined by a rule over a base presentation; vertices are named after base vertices."""
    rule = None

    def __init__(self, base, name=None):
        self.base = base
        self.name = name or '%s(%s)' % (self.rule, base.name)
        self.gadget_by_id = {}
        self.family_by_id = {}
        self.connected_hint = getattr(base, 'connected_hint', True)

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, self.base.name)

    def mapped_parts(self, v, translate, skip=()):
        """Base neighbor parts of v, each neighbor passed through translate; neighbors in skip are dropped."""
        finite, streams = self.base.neighbor_parts(v)
        skip = set(skip)
        mapped = [translate(u) for u in finite if u not in skip]
        mapped_streams = [lambda s=s: (translate(u) for u in s() if u not in skip) for s in streams]
        return mapped, mapped_streams

    def to_document(self):
        base = self.base.to_document() if hasattr(self.base, 'to_document') else self.base.name
        return {'name': self.name, 'derived': self.rule, 'base': base,
                'skeleton': self.skeleton().describe()}


def require_declarative(p, op):
    if not isinstance(p, Presentation):
        raise SchemaError('%s needs a declarative presentation, got %s' % (op, getattr(p, 'name', p)))
    return p


def connect_components(p):
    """
    The connected hull: one apex core vertex 'hull' joined to one vertex of every skeleton component (a first-only
    attachment for host-less gadgets) and to every copy of a host-less family. Edge-ends are unchanged.
    """
    require_declarative(p, 'connect_components')
    s = p.skeleton()
    comps = sorted((sort_vertices(c) for c in nx.connected_components(s.graph)), key=lambda c: vertex_key(c[0]))
    if len(comps) <= 1:
        return TransformResult('hull', p, rules={'vertex_map': 'identity'}, source=p.name)
    doc = p.to_document()
    apex = 'hull'
    while apex in p.core:
        apex += '_'
    doc['core']['vertices'].append(apex)
    gadgets = dict((g['id'], g) for g in doc['gadgets'])
    families = dict((f['id'], f) for f in doc['families'])
    done = set()
    for comp in comps:
        owners = sorted(set(s.attr(n, 'owner') if not s.is_concrete(n) else p.resolve(n).owner for n in comp),
                        key=vertex_key)
        if done.intersection(owners):
            continue
        done.update(owners)
        core = [n for n in comp if n.startswith('c:')]
        if core:
            doc['core']['edges'].append([apex, core[0][2:]])
            continue
        attachable = [o for o in owners if o in gadgets and gadgets[o]['kind'] != 'StarOfRays']
        if attachable:
            gadgets[attachable[0]]['attachments'].append({'host': apex, 'mode': 'FirstOnly'})
            continue
        fid = [o for o in owners if o in families][0]
        f = families[fid]
        f['per_copy_edges'].append([p.default_local(fid), apex])
    doc['name'] = 'hull(%s)' % p.name
    doc['connected_hint'] = True
    hull = parse_presentation(doc)
    logging.info('Connected %d skeleton components of %s through apex %s' % (len(comps), p.name, apex))
    return TransformResult('hull', hull, rules={'vertex_map': 'identity'}, source=p.name)


OPS = ('line', 'hgraph', 'completion', 'quotient', 'subdivide', 'timid2edge')


def transform(p, op):
    """Runs the named construction on p."""
    if op == 'line':
        from endspace.LineGraph import line_graph_presentation
        return line_graph_presentation(p)
    if op == 'hgraph':
        from endspace.HGraph import h_graph
        return h_graph(p)
    if op == 'completion':
        from endspace.Completion import completion
        return completion(p)
    if op == 'quotient':
        from endspace.Quotient import quotient_sim
        return quotient_sim(p)
    if op == 'subdivide':
        from endspace.Subdivision import subdivide
        return subdivide(p)
    if op == 'timid2edge':
        from endspace.Subdivision import timid_to_edge
        return timid_to_edge(p)
    raise ValueError('Unknown transform %s, known: %s' % (op, ', '.join(OPS)))


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    from endspace.catalog import load
    print(connect_components(load('omega_rays')).output.dumps())
