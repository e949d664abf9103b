# -*- coding: utf-8 -*-
from __future__ import print_function
import itertools
import logging
import sys

import networkx as nx

from endspace.Cuts import engine, min_edge_cut, RaySpec
from endspace.FiniteGraph import edge_key, edge_name, split_edge, sort_vertices, vertex_key
from endspace.Presentation import parse_presentation
from endspace.Separation import Separator, EDGE_SET, cut_skeleton
from endspace.Spaces import Spaces, correspondence_check
from endspace.Transforms import TransformResult, require_declarative


class UnpresentableClass(Exception):
    pass


def _core_class(p, members, regions):
    """Core ids of a class, or UnpresentableClass when it holds gadget, family or hidden vertices."""
    if regions:
        raise UnpresentableClass('Class of %s in %s is infinite (regions %s)' %
                                 (', '.join(members), p.name, ', '.join(regions)))
    refs = [p.resolve(v) for v in members]
    outside = [r.name for r in refs if r.kind != 'core']
    if outside:
        raise UnpresentableClass('Class %s of %s holds non-core vertices %s' % (members, p.name, outside))
    return sorted((r.owner for r in refs), key=vertex_key)


def timid_classes(p):
    """Timid ~E classes of explicit vertices with at least two members."""
    e = engine(p)
    result = []
    for c in e.classes_sim_E():
        if c.omega_singletons or len(c.members) + len(c.regions) < 2:
            continue
        if c.members and e.timid(c.members[0]):
            result.append(c)
    return result


class Contraction(object):
    """The projection pi: every vertex of a contracted class goes to the least member, all others stay."""

    def __init__(self, classes):
        self.rep = {}
        self.classes = []
        for members in classes:
            members = sorted(members, key=vertex_key)
            self.classes.append(members)
            for m in members[1:]:
                self.rep[m] = members[0]

    def core(self, x):
        return self.rep.get(x, x)

    def __call__(self, v):
        if v.startswith('c:'):
            return 'c:%s' % self.core(v[2:])
        return v

    def edge(self, e):
        """pi of an edge name, None for an edge inside one class."""
        u, w = split_edge(e)
        a, b = self(u), self(w)
        return None if a == b else edge_name(a, b)

    def host(self, doc):
        return self.core(doc) if isinstance(doc, str) else doc

    def describe(self):
        return ['{%s} -> %s' % (', '.join(c), c[0]) for c in self.classes]


def _dedupe(items):
    seen = []
    for x in items:
        if x not in seen:
            seen.append(x)
    return seen


def _contract(p, classes, name):
    pi = Contraction(classes)
    doc = p.to_document()
    doc['name'] = name
    core = doc['core']
    core['vertices'] = [v for v in core['vertices'] if pi.core(v) == v]
    edges = set()
    for u, w in core['edges']:
        a, b = pi.core(u), pi.core(w)
        if a != b:
            edges.add(edge_key(a, b))
    core['edges'] = [list(e) for e in sorted(edges, key=lambda e: (vertex_key(e[0]), vertex_key(e[1])))]
    for g in doc['gadgets']:
        for att in g['attachments']:
            att['host'] = pi.host(att['host'])
        g['attachments'] = _dedupe(g['attachments'])
        if 'core_members' in g:
            g['core_members'] = _dedupe(pi.core(m) for m in g['core_members'])
    for f in doc['families']:
        if f.get('host') is not None:
            f['host'] = pi.host(f['host'])
        f['per_copy_edges'] = _dedupe([local, pi.host(h)] for local, h in f['per_copy_edges'])
    return parse_presentation(doc), pi


def _point_map(p, q, **kwargs):
    source = Spaces(p, **kwargs).edge_ends()
    target = Spaces(q, **kwargs).edge_ends()
    m = {}
    for pt in source.points:
        owner = target.owner(pt.atoms[0])
        if owner is None:
            logging.warning('Edge-end %s of %s has no image in %s' % (pt.id, p.name, q.name))
            continue
        m[pt.id] = owner
    return m


def quotient_sim(p, **kwargs):
    """
    G/~ : every timid ~E class is contracted to its least member; non-timid vertices stay singletons, so every
    gadget terminal survives. Point map pi-bar sends each edge-end to the edge-end of its projected ray.
    """
    require_declarative(p, 'quotient')
    classes = [_core_class(p, c.members, c.regions) for c in timid_classes(p)]
    if not classes:
        logging.info('All timid ~E classes of %s are singletons, the quotient is p itself' % p.name)
        return TransformResult('quotient', p, vertex_map=lambda v: v, point_map=dict(
            (x, x) for x in Spaces(p, **kwargs).edge_ends().ids()), rules={'vertex_map': 'identity'},
            source=p.name)
    q, pi = _contract(p, classes, 'quotient(%s)' % p.name)
    logging.info('Quotient of %s contracts %d classes: %s' % (p.name, len(classes), '; '.join(pi.describe())))
    result = TransformResult('quotient', q, vertex_map=pi, edge_map=pi.edge, point_map=_point_map(p, q, **kwargs),
                             separator_map=lambda F: Separator(EDGE_SET, [x for x in map(pi.edge, F.elements) if x]),
                             rules={'vertex_map': pi.describe(), 'edge_map': 'u|w -> pi(u)|pi(w)',
                                    'separator_map': 'F -> pi[F]', 'point_map': '[r] -> [r^pi]'},
                             source=p.name)
    result.projection = pi
    return result


def quotient_single_class(p, v0, **kwargs):
    """G/[v0]_E: only the ~E class of v0 is contracted, timid or not."""
    require_declarative(p, 'quotient_single_class')
    e = engine(p)
    for c in e.classes_sim_E():
        if v0 in c.members:
            break
    else:
        p.resolve(v0)
        c = None
    if c is None or len(c.members) + len(c.regions) < 2:
        return TransformResult('quotient', p, vertex_map=lambda v: v, rules={'vertex_map': 'identity'},
                               source=p.name)
    members = _core_class(p, c.members, c.regions)
    q, pi = _contract(p, [members], 'quotient(%s,%s)' % (p.name, v0))
    result = TransformResult('quotient', q, vertex_map=pi, edge_map=pi.edge,
                             rules={'vertex_map': pi.describe(), 'edge_map': 'u|w -> pi(u)|pi(w)'},
                             source=p.name)
    result.projection = pi
    return result


def project_walk(pi, walk):
    """
    Greedy last-occurrence scan: from the current position jump to the last vertex of the walk in the same class,
    emit that class and continue right after it. The output is a path of classes inside pi[walk].
    """
    result = []
    i = 0
    while i < len(walk):
        c = pi(walk[i])
        j = max(k for k in range(i, len(walk)) if pi(walk[k]) == c)
        result.append(c)
        i = j + 1
    return result


def ray_projection(result, r):
    """r^pi for a ray given by prefix and tail; the tail of a gadget or family survives the quotient unchanged."""
    pi = result.map_vertex
    prefix = project_walk(pi, r.prefix)
    return RaySpec(r.tail, prefix)


def check_ray_projection(result, walk):
    """Failures of the projected walk: classes outside pi[walk], repeated classes or non-adjacent steps."""
    projected = project_walk(result.map_vertex, walk)
    image = set(result.map_vertex(v) for v in walk)
    failures = [('outside', c) for c in projected if c not in image]
    if len(set(projected)) != len(projected):
        failures.append(('repeated', projected))
    for a, b in zip(projected, projected[1:]):
        if not result.output.adjacent(a, b):
            failures.append(('gap', a, b))
    return failures


def preimage_sizes(result, p, n):
    """For every quotient edge among truncation vertices at depth n: the number of G-edges projecting onto it."""
    sizes = {}
    for u, w in p.truncate(n).graph.edges:
        e = result.map_edge(edge_name(u, w))
        if e is not None:
            sizes[e] = sizes.get(e, 0) + 1
    return sizes


def preimage_finiteness_failures(result, p, depths=(4, 8)):
    """Quotient edges whose preimage keeps growing between truncation depths."""
    shallow = preimage_sizes(result, p, depths[0])
    deep = preimage_sizes(result, p, depths[1])
    return sorted(e for e in shallow if deep.get(e, 0) != shallow[e])


def dominance_failures(result, p):
    """Edge-dominant vertices of G that are not singleton classes or not edge-dominant in G/~."""
    e, eq = engine(p), engine(result.output)
    failures = []
    for v in e.dominating_vertices():
        image = result.map_vertex(v)
        members = [u for u in e.explicit_vertices() if result.map_vertex(u) == image]
        if members != [v]:
            failures.append((v, 'class %s' % members))
        elif not eq.dominating(image):
            failures.append((v, 'not dominant in the quotient'))
    return failures


def timid_class_quotient_failures(p):
    """For timid u and v not ~E u: u ~Et v in G iff [u] ~Et v in G/[u]_E."""
    e = engine(p)
    failures = []
    vertices = e.explicit_vertices()
    for u in e.timid_vertices():
        try:
            single = quotient_single_class(p, u)
        except UnpresentableClass as ex:
            logging.info('Class of %s skipped: %s' % (u, ex))
            continue
        eq = engine(single.output)
        cu = single.map_vertex(u)
        for v in vertices:
            if e.sim_E(u, v):
                continue
            if e.sim_E_t(u, v) != eq.sim_E_t(cu, single.map_vertex(v)):
                failures.append((u, v))
    return failures


def vertex_separation_failures(result, p):
    """
    Pairs of explicit vertices in distinct classes whose pi-saturated minimum cut does not separate their classes
    in G/~.
    """
    pi = result.map_vertex
    s = p.skeleton()
    q = result.output
    failures = []
    for u, v in itertools.combinations(s.concrete_nodes(), 2):
        if pi(u) == pi(v):
            continue
        cut = min_edge_cut(s, u, v)
        if not cut.finite:
            continue
        image = set(x for x in map(result.map_edge, cut.witness) if x)
        saturated = [x for x in s.unit_arcs() if result.map_edge(x) in image]
        projected = Separator(EDGE_SET, [result.map_edge(x) for x in saturated])
        sq = q.skeleton([pi(u), pi(v)])
        missing = [x for x in projected.elements if x not in sq.edge_arcs]
        if missing:
            failures.append((u, v, 'edges %s are not explicit in the quotient' % missing))
            continue
        if nx.has_path(cut_skeleton(sq, projected), pi(u), pi(v)):
            failures.append((u, v, 'pi[F] = %s leaves them connected' % projected.key()))
    return failures


def dispersed_class_failures(p, depths=(4, 8)):
    """
    Timid ~E classes must not grow with the truncation depth; a growing class comes back with the star or comb
    found on its members at the deeper depth.
    """
    e = engine(p)
    failures = []
    for c in timid_classes(p):
        rep = c.members[0]
        sizes = []
        for n in depths:
            t = p.truncate(n)
            members = [w for w in t.graph.vertices if e.sim_E(rep, w)]
            sizes.append(members)
        if len(sizes[-1]) != len(sizes[0]):
            from endspace.StarComb import star_or_comb
            t = p.truncate(depths[-1])
            certificate = star_or_comb(t, sizes[-1], len(sizes[-1]))
            failures.append((rep, len(sizes[0]), len(sizes[-1]), repr(certificate)))
    return failures


class QuotientReport(object):
    def __init__(self, name, checks):
        self.name = name
        self.checks = checks

    @property
    def passed(self):
        return all(not failures for failures in self.checks.values())

    def to_document(self):
        return {'presentation': self.name, 'passed': self.passed,
                'checks': dict((k, [list(f) if isinstance(f, tuple) else f for f in v])
                               for k, v in self.checks.items())}


def check_quotient(p, **kwargs):
    result = quotient_sim(p, **kwargs)
    source = Spaces(p, **kwargs).edge_ends()
    target = Spaces(result.output, **kwargs).edge_ends()
    correspondence = correspondence_check(source, target, result.point_map)
    checks = {'correspondence': correspondence.failures,
              'preimage': preimage_finiteness_failures(result, p),
              'dominance': dominance_failures(result, p),
              'timid_class_quotient': timid_class_quotient_failures(p),
              'vertex_separation': vertex_separation_failures(result, p) if result.output is not p else [],
              'dispersed': dispersed_class_failures(p)}
    report = QuotientReport(p.name, checks)
    if report.passed:
        logging.info('Quotient of %s verified' % p.name)
    else:
        logging.warning('Quotient of %s failed: %s' % (p.name, report.to_document()))
    return report


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    from endspace.catalog import load
    p = load('twin_hubs')
    result = quotient_sim(p)
    print(result.output.dumps())
    print(project_walk(result.map_vertex, ['c:u', 'f:T:0:0', 'c:v', 'g:q:0']))
    print(check_quotient(p).to_document())
