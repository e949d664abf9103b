# -*- coding: utf-8 -*-
from __future__ import print_function
import itertools
import logging
import os
import sys

import networkx as nx

from endspace.AnswerCache import AnswerCache
from endspace.Cuts import RaySpec, engine, min_edge_cut
from endspace.FiniteGraph import UnresolvedRef, SchemaError, split_edge, sort_vertices
from endspace.Presentation import RAY
from endspace.Separation import Separation, Separator, VERTEX_SET, EDGE_SET, components_finite
from endspace.StarComb import greedy_path

COMPONENTS = 'components'
CUT = 'cut'
SAME_COMPONENT = 'same_component'
RAYLESS = 'rayless'
KINDS = (COMPONENTS, CUT, SAME_COMPONENT, RAYLESS)

OMEGA = 'omega'
INFINITE = 'Infinite'

SINK = '__sink__'


class Unstable(Exception):
    def __init__(self, max_depth, query=None, values=()):
        Exception.__init__(self, 'No stable answer up to depth %s for %s: %s' % (max_depth, query, list(values)))
        self.max_depth = max_depth
        self.query = query
        self.values = list(values)


class Query(object):
    """
    One oracle question about G minus a separator F: the number of (infinite) components, the minimum edge cut
    between a vertex and a vertex or ray tail, whether two vertices share a component, whether the component
    of a vertex is rayless.
    """

    def __init__(self, kind, presentation=None, separator=None, a=None, b=None, tail=None, infinite_only=True):
        if kind not in KINDS:
            raise SchemaError('Unknown query kind %s, known: %s' % (kind, ', '.join(KINDS)))
        self.kind = kind
        self.presentation = presentation
        self.separator = separator if separator is not None else Separator(VERTEX_SET)
        self.a = a
        self.b = b
        self.tail = tail
        self.infinite_only = infinite_only

    def vertices(self):
        """Every vertex the query names; the truncation must contain them all."""
        result = list(self.separator.vertices())
        result.extend(v for v in (self.a, self.b) if v is not None)
        return sort_vertices(set(result))

    def key(self):
        parts = [self.kind, self.presentation or '', self.separator.key(), self.a or '', self.b or '',
                 self.tail or '']
        if self.kind == COMPONENTS:
            parts.append('infinite' if self.infinite_only else 'all')
        return '/'.join(parts)

    def __repr__(self):
        return 'Query(%s)' % self.key()

    def to_document(self):
        doc = {'kind': self.kind, 'separator': {'kind': self.separator.kind, 'elements': self.separator.elements}}
        if self.presentation is not None:
            doc['presentation'] = self.presentation
        for name in ('a', 'b', 'tail'):
            if getattr(self, name) is not None:
                doc[name] = getattr(self, name)
        if self.kind == COMPONENTS:
            doc['infinite_only'] = self.infinite_only
        return doc

    @staticmethod
    def from_document(doc):
        if not isinstance(doc, dict) or 'kind' not in doc:
            raise SchemaError('A query is an object with a kind, got %r' % (doc,))
        sep = doc.get('separator') or {}
        try:
            separator = Separator(sep.get('kind', VERTEX_SET), sep.get('elements', []))
        except ValueError as e:
            raise SchemaError('Query separator: %s' % e) from e
        q = Query(doc['kind'], doc.get('presentation'), separator, doc.get('a'), doc.get('b'), doc.get('tail'),
                  doc.get('infinite_only', True))
        if q.kind != COMPONENTS and q.a is None:
            raise SchemaError('Query %s needs a vertex a' % q.key())
        if (q.kind == SAME_COMPONENT and q.b is None) or (q.kind == CUT and (q.b is None) == (q.tail is None)):
            raise SchemaError('Query %s needs a second vertex b (or, for cuts, exactly one of b and tail)' % q.key())
        return q


class StableAnswer(object):
    """
    An oracle answer: the value seen on every truncation of a window, or a value detected from growth
    (omega counts, infinite cuts, growing paths). Always heuristic.
    """

    def __init__(self, query, value, depth, window, detected=None, values=()):
        self.query = query
        self.value = value
        self.depth = depth
        self.window = window
        self.detected = detected
        self.values = list(values)
        self.caveat = True

    def __repr__(self):
        return 'StableAnswer(%s = %s from depth %s%s)' % (self.query.key(), self.value, self.depth,
                                                          ', %s' % self.detected if self.detected else '')

    def to_document(self):
        return {'query': self.query.to_document(), 'value': self.value, 'first_stable_depth': self.depth,
                'window': self.window, 'detected': self.detected, 'values': self.values,
                'caveat': 'stabilization is heuristic, not a certificate'}


def _tail_vertices(p, graph, tail):
    """Vertices of a Ray gadget past its first vertex, standing for the tail of the ray."""
    parts = tail.split(':')
    if len(parts) != 2 or parts[0] != 'g' or parts[1] not in p.gadget_by_id or \
            p.gadget_by_id[parts[1]].kind != RAY:
        raise UnresolvedRef('The oracle compares cuts to Ray gadget tails g:<id>, got %s' % tail)
    prefix = 'g:%s:' % parts[1]
    return [v for v in graph.vertices if v.startswith(prefix) and int(v[len(prefix):]) >= 1]


def edge_connectivity(graph, a, sinks):
    """Maximum number of edge-disjoint paths from a to the set sinks in a finite graph."""
    d = nx.DiGraph()
    d.add_nodes_from(graph.vertices)
    for u, v in graph.edges:
        d.add_edge(u, v, capacity=1)
        d.add_edge(v, u, capacity=1)
    big = len(graph.edges) + 1
    for b in sinks:
        d.add_edge(b, SINK, capacity=big)
    if not sinks:
        return 0
    return nx.maximum_flow_value(d, a, SINK)


def longest_greedy_path(graph, a):
    """Vertices on the longer of two greedy paths: one from a, one from the vertex BFS-farthest from a."""
    depth = nx.single_source_shortest_path_length(graph.to_networkx(), a)
    far = max(depth.values())
    b = sort_vertices(v for v, d in depth.items() if d == far)[0]
    return max(len(greedy_path(graph, a)), len(greedy_path(graph, b)))


class Oracle(object):
    """Brute force on truncations, depth 2 up to max_depth, with answers read off stable windows."""
    Max_depth = 16
    Window = 3
    Cut_cap = 10

    def __init__(self, max_depth=None, window=None, cut_cap=None):
        env = os.environ.get('ENDSPACE_MAX_DEPTH')
        if max_depth is None and env:
            max_depth = int(env)
        self.max_depth = max_depth if max_depth is not None else self.Max_depth
        self.window = window if window is not None else self.Window
        self.cut_cap = cut_cap if cut_cap is not None else self.Cut_cap
        self.cache = AnswerCache()

    def truncation(self, p, n):
        return self.cache.remember('truncation', lambda: p.truncate(n), presentation=p.name, depth=n)

    def _remainder(self, t, q):
        F = q.separator
        if F.kind == VERTEX_SET:
            return t.graph.without_vertices(F.elements)
        return t.graph.without_edges([split_edge(e) for e in F.elements])

    def _component(self, h, v):
        for comp in h.components():
            if v in comp:
                return comp
        raise UnresolvedRef('%s is removed by the separator' % v)

    def evaluate(self, q, p, n):
        """The raw answer of q on the depth n truncation."""
        t = self.truncation(p, n)
        if q.kind == COMPONENTS:
            return sum(1 for comp, frontier in components_finite(t, q.separator)
                       if frontier or not q.infinite_only)
        h = self._remainder(t, q)
        if q.kind == SAME_COMPONENT:
            return q.b in self._component(h, q.a)
        if q.kind == RAYLESS:
            return longest_greedy_path(h.induced(self._component(h, q.a)), q.a)
        sinks = _tail_vertices(p, h, q.tail) if q.tail is not None else [q.b]
        return edge_connectivity(h, q.a, [s for s in sinks if s != q.a])

    def first_depth(self, q, p):
        return max([2] + [p.depth_of(v) for v in q.vertices()])

    def stabilized(self, q, p):
        """
        :return: StableAnswer; the first window of identical answers, else growth read at max_depth: linear
                 component counts are omega, cuts above the cap at every depth of the window are Infinite,
                 strictly growing greedy paths mean the component carries a ray
        """
        w = self.window
        values = []
        depths = []
        for n in range(self.first_depth(q, p), self.max_depth + 1):
            values.append(self.evaluate(q, p, n))
            depths.append(n)
            last = values[-(w + 1):]
            if len(last) == w + 1 and len(set(last)) == 1:
                value = last[0]
                if q.kind == RAYLESS:
                    value = True
                elif q.kind == CUT and value > self.cut_cap:
                    value = INFINITE
                return StableAnswer(q, value, depths[-(w + 1)], w, None, values)
        last = values[-(w + 1):]
        steps = [b - a for a, b in zip(last, last[1:])]
        if len(last) == w + 1:
            if q.kind == COMPONENTS and len(set(steps)) == 1 and steps[0] >= 1:
                logging.warning('%s on %s: count grows by %d per depth, read as omega' % (q.key(), p.name, steps[0]))
                return StableAnswer(q, OMEGA, depths[-(w + 1)], w, 'CountOmega', values)
            if q.kind == CUT and all(v > self.cut_cap for v in last) and values[0] < values[-1]:
                logging.warning('%s on %s: cut exceeds %d and grows, read as Infinite' %
                                (q.key(), p.name, self.cut_cap))
                return StableAnswer(q, INFINITE, depths[-(w + 1)], w, 'Infinite', values)
            if q.kind == RAYLESS and all(s >= 1 for s in steps):
                return StableAnswer(q, False, depths[-(w + 1)], w, 'PathGrowth', values)
        raise Unstable(self.max_depth, q, values)

    def symbolic_answer(self, q, p):
        """The exact answer of the skeleton engine, in the oracle's vocabulary."""
        sep = Separation(p)
        if q.kind == COMPONENTS:
            records = sep.components(q.separator, infinite_only=q.infinite_only)
            if any(r.multiplicity != 1 for r in records):
                return OMEGA
            return len(records)
        if q.kind == SAME_COMPONENT:
            for rec in sep.components(q.separator, focus=[q.a, q.b]):
                if q.a in rec.nodes:
                    return q.b in rec.nodes
            raise UnresolvedRef('%s is removed by %s' % (q.a, q.separator.key()))
        if q.kind == RAYLESS:
            return not sep.component_of(q.separator, q.a).rays
        if q.separator.elements:
            raise UnresolvedRef('Cut queries are asked on G itself, got separator %s' % q.separator.key())
        if q.tail is not None:
            cut = engine(p).domination_cut(q.a, RaySpec(q.tail))
        else:
            cut = min_edge_cut(p.skeleton([q.a, q.b]), q.a, q.b)
        return cut.value if cut.finite else INFINITE

    def compare(self, q, p):
        expected = self.symbolic_answer(q, p)
        try:
            answer = self.stabilized(q, p)
            found, depth = answer.value, answer.depth
        except Unstable as e:
            found, depth = 'Unstable', e.max_depth
        row = {'query': q.key(), 'symbolic': expected, 'oracle': found, 'depth': depth,
               'agree': expected == found}
        if not row['agree']:
            logging.warning('Differential mismatch on %s: symbolic %s, oracle %s' % (q.key(), expected, found))
        return row


class DifferentialReport(object):
    def __init__(self, rows):
        self.rows = rows

    @property
    def mismatches(self):
        return [r for r in self.rows if not r['agree']]

    @property
    def passed(self):
        return not self.mismatches

    def __repr__(self):
        return 'DifferentialReport(%d queries, %d mismatches)' % (len(self.rows), len(self.mismatches))

    def to_document(self):
        return {'queries': len(self.rows), 'mismatches': self.mismatches, 'passed': self.passed, 'rows': self.rows}


def stabilized(q, p, max_depth=None, w=None):
    return Oracle(max_depth, w).stabilized(q, p)


def symbolic_answer(q, p):
    return Oracle().symbolic_answer(q, p)


def build_query_matrix(p, width=6):
    """
    Queries over the explicit skeleton of p: component counts after removing nothing, one vertex, one unit arc
    edge or two vertices; same-component and rayless questions around the first `width` explicit vertices;
    vertex to vertex cuts and vertex to Ray-gadget-tail cuts.
    """
    s = p.skeleton()
    V = s.concrete_nodes()
    E = s.unit_arcs()
    head = V[:width]
    queries = [Query(COMPONENTS, p.name)]
    queries.extend(Query(COMPONENTS, p.name, Separator(VERTEX_SET, [v])) for v in V)
    queries.extend(Query(COMPONENTS, p.name, Separator(EDGE_SET, [e])) for e in E)
    queries.extend(Query(COMPONENTS, p.name, Separator(VERTEX_SET, pair))
                   for pair in itertools.combinations(head, 2))
    for a, b in itertools.combinations(head, 2):
        queries.append(Query(SAME_COMPONENT, p.name, a=a, b=b))
        queries.extend(Query(SAME_COMPONENT, p.name, Separator(VERTEX_SET, [x]), a=a, b=b)
                       for x in head if x not in (a, b))
        queries.append(Query(CUT, p.name, a=a, b=b))
    for a in head:
        queries.append(Query(RAYLESS, p.name, a=a))
        queries.extend(Query(RAYLESS, p.name, Separator(VERTEX_SET, [x]), a=a) for x in head if x != a)
    rays = [g.id for g in getattr(p, 'gadgets', []) if g.kind == RAY]
    for gid in rays:
        queries.extend(Query(CUT, p.name, a=a, tail='g:%s' % gid) for a in head
                       if not a.startswith('g:%s:' % gid))
    return queries


def catalog_query_matrix(width=6):
    from endspace.catalog import load_all
    return [q for p in load_all() for q in build_query_matrix(p, width)]


def run_differential(queries, presentations, oracle=None):
    """
    :param queries: list of Query; queries without a presentation name run against the only presentation given
    :param presentations: dict name -> presentation
    :return: DifferentialReport
    """
    oracle = oracle or Oracle()
    rows = []
    for q in queries:
        if q.presentation is None and len(presentations) == 1:
            p = list(presentations.values())[0]
        elif q.presentation in presentations:
            p = presentations[q.presentation]
        else:
            raise UnresolvedRef('Query %s names an unknown presentation' % q.key())
        rows.append(oracle.compare(q, p))
    report = DifferentialReport(rows)
    logging.info('Oracle differential over %d queries: %d mismatches' % (len(rows), len(report.mismatches)))
    return report


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    from endspace.catalog import load
    p = load('double_ray_dominator')
    print(stabilized(Query(CUT, p.name, a='c:hub', tail='g:r1'), p))
    p = load('star_of_rays')
    print(stabilized(Query(COMPONENTS, p.name, Separator(VERTEX_SET, ['c:c'])), p))
    print(run_differential(build_query_matrix(p), {p.name: p}))
