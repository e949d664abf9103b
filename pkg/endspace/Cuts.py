# -*- coding: utf-8 -*-
from __future__ import print_function
import sys
import logging

import networkx as nx

from endspace.AnswerCache import AnswerCache
from endspace.FiniteGraph import UnresolvedRef, split_edge, sort_vertices, vertex_key
from endspace.Presentation import INFINITE
from endspace.Skeleton import SINGLETON, OMEGA_FAMILY

SOURCE = '__source__'
SINK = '__sink__'


class UnsupportedUSpec(Exception):
    pass


class CutAnswer(object):
    """
    Value of a minimum cut on a skeleton. Finite answers carry the lexicographically least minimum cut (edge
    names or vertex names); Infinite answers carry a path of omega arcs, each of which stands for infinitely
    many disjoint paths.
    """

    def __init__(self, value, witness, kind='edge', source=None, target=None):
        self.value = value
        self.witness = witness
        self.kind = kind
        self.source = source
        self.target = target

    @property
    def finite(self):
        return self.value != INFINITE

    def __repr__(self):
        return 'CutAnswer(%s, %s)' % ('Infinite' if not self.finite else 'Finite(%d)' % self.value, self.witness)

    def to_document(self):
        doc = {'kind': self.kind, 'source': self.source, 'target': self.target}
        if self.finite:
            doc['value'] = self.value
            doc['witness'] = list(self.witness)
        else:
            doc['value'] = 'Infinite'
            doc['omega_path'] = list(self.witness)
        return doc


class RaySpec(object):
    """
    A ray given by a finite prefix walk and a tail descriptor. Tail descriptors: g:<ray or clique id>,
    g:<star>:<k>, g:<star>:chain, f:<family>:<copy>, f:<family>:<copy>.<k>, f:<family>:chain,
    f:<family>:<copy>:thread; '*' as copy or ray index stands for a generic member beyond the explicit window.
    """

    def __init__(self, tail, prefix=()):
        self.tail = tail
        self.prefix = list(prefix)

    @staticmethod
    def parse(text):
        if '>' in text:
            prefix, tail = text.rsplit('>', 1)
            return RaySpec(tail, [v for v in prefix.split(',') if v])
        return RaySpec(text)

    def __repr__(self):
        return 'RaySpec(%s%s)' % (','.join(self.prefix) + '>' if self.prefix else '', self.tail)


def _member_count(p, seed_id):
    seed = p.skeleton().seed_by_id(seed_id)
    if seed is None:
        raise UnresolvedRef('No seed %s in %s' % (seed_id, p.name))
    return len(seed.members)


def tail_target(p, tail):
    """:return: (focus vertices, skeleton node name) for a tail descriptor"""
    parts = tail.split(':')
    if len(parts) < 2 or parts[0] not in ('g', 'f'):
        raise UnresolvedRef('Malformed tail descriptor %s' % tail)
    kind, owner = parts[0], parts[1]
    if kind == 'g':
        if len(parts) == 2:
            return [], '~g:%s' % owner
        if parts[2] == 'chain':
            return [], '~g:%s:*' % owner
        k = _member_count(p, 'g:%s' % owner) if parts[2] == '*' else int(parts[2])
        return ['g:%s:%d:0' % (owner, k)], '~g:%s:%d' % (owner, k)
    if len(parts) == 3 and parts[2] == 'chain':
        return [], '~f:%s' % owner
    if len(parts) == 4 and parts[3] == 'thread':
        return ['f:%s:%s:hub' % (owner, parts[2])], '~f:%s:%s:*' % (owner, parts[2])
    if len(parts) == 3 and '.' in parts[2]:
        j, k = parts[2].split('.')
        return ['f:%s:%s:%s.0' % (owner, j, k)], '~f:%s:%s:%s' % (owner, j, k)
    if len(parts) == 3:
        j = _member_count(p, 'f:%s' % owner) if parts[2] == '*' else int(parts[2])
        return ['f:%s:%d:0' % (owner, j)], '~f:%s:%d' % (owner, j)
    raise UnresolvedRef('Malformed tail descriptor %s' % tail)


def _network(s, removed=(), cuttable=None):
    removed = set(removed)
    d = nx.DiGraph()
    d.add_nodes_from(s.graph.nodes())
    for u, v, data in s.graph.edges(data=True):
        if data.get('omega'):
            c = s.omega
        else:
            edges = [e for e in data['edges'] if e not in removed]
            if not edges:
                continue
            c = min(s.omega, sum(1 if cuttable is None or cuttable(e) else s.omega for e in edges))
        d.add_edge(u, v, capacity=c)
        d.add_edge(v, u, capacity=c)
    return d


def _terminals(d, sources, sinks, big):
    for a in sources:
        d.add_edge(SOURCE, a, capacity=big)
    for b in sinks:
        d.add_edge(b, SINK, capacity=big)
    return d


def _as_list(x):
    return [x] if isinstance(x, str) else list(x)


def _flow_value(s, sources, sinks, removed=(), cuttable=None):
    d = _terminals(_network(s, removed, cuttable), sources, sinks, s.omega)
    return nx.maximum_flow_value(d, SOURCE, SINK)


def omega_graph(s, cuttable=None):
    """Graph of the arcs no finite edge set can cut."""
    g = nx.Graph()
    g.add_nodes_from(s.graph.nodes())
    for u, v, data in s.graph.edges(data=True):
        if data.get('omega') or (cuttable is not None and not all(cuttable(e) for e in data['edges'])):
            g.add_edge(u, v)
    return g


def omega_labels(s):
    if getattr(s, '_omega_labels', None) is None:
        labels = {}
        for i, comp in enumerate(nx.connected_components(omega_graph(s))):
            for n in comp:
                labels[n] = i
        s._omega_labels = labels
    return s._omega_labels


def min_edge_cut(s, a, b, removed=(), cuttable=None):
    """
    Minimum edge cut between node (sets) a and b of skeleton s. Arcs whose edges are all in `removed` are gone;
    edges rejected by `cuttable` behave like omega arcs.

    :return: CutAnswer
    """
    sources, sinks = _as_list(a), _as_list(b)
    if set(sources) & set(sinks):
        return CutAnswer(INFINITE, sources[:1], 'edge', a, b)
    value = _flow_value(s, sources, sinks, removed, cuttable)
    if value >= s.omega:
        g = omega_graph(s, cuttable)
        g.add_edges_from((SOURCE, x) for x in sources)
        g.add_edges_from((x, SINK) for x in sinks)
        path = nx.shortest_path(g, SOURCE, SINK)[1:-1]
        return CutAnswer(INFINITE, path, 'edge', a, b)
    removed = set(removed)
    witness = []
    for e in s.unit_arcs():
        if value == 0:
            break
        if e in removed or (cuttable is not None and not cuttable(e)):
            continue
        smaller = _flow_value(s, sources, sinks, removed | set([e]), cuttable)
        if smaller == value - 1:
            removed.add(e)
            witness.append(e)
            value = smaller
    check = _network(s, removed, cuttable)
    assert not any(nx.has_path(check, x, y) for x in sources for y in sinks), \
        'Cut witness %s does not separate %s from %s' % (witness, a, b)
    return CutAnswer(len(witness), witness, 'edge', a, b)


def _split_network(s, removable, protected, removed=()):
    big = s.omega + len(s.graph)
    d = nx.DiGraph()
    removed = set(removed)
    for x in s.graph.nodes():
        if x in removed:
            continue
        cap = 1 if s.is_concrete(x) and x not in protected and removable(x) else big
        d.add_edge(('in', x), ('out', x), capacity=cap)
    for u, v, data in s.graph.edges(data=True):
        if u in removed or v in removed:
            continue
        hidden = []
        if not data.get('omega'):
            for e in data['edges']:
                for node in (u, v):
                    h = s.hidden_endpoint(e, node)
                    if h is not None and h not in protected and removable(h):
                        hidden.append(h)
        if hidden and len(hidden) == len(data['edges']):
            for h in hidden:
                d.add_edge(('out', u), ('in', h), capacity=big)
                d.add_edge(('out', v), ('in', h), capacity=big)
                d.add_edge(('in', h), ('out', h), capacity=1)
                d.add_edge(('out', h), ('in', u), capacity=big)
                d.add_edge(('out', h), ('in', v), capacity=big)
        else:
            d.add_edge(('out', u), ('in', v), capacity=big)
            d.add_edge(('out', v), ('in', u), capacity=big)
    return d, big


def min_vertex_cut(s, a, b, removable, removed=()):
    """
    Minimum vertex cut between nodes a and b using only vertices accepted by `removable` (a and b excluded).
    Vertices hidden at the region end of a unit arc count as removable when accepted.
    """
    sources, sinks = _as_list(a), _as_list(b)
    protected = set(sources) | set(sinks)
    if set(sources) & set(sinks):
        return CutAnswer(INFINITE, sources[:1], 'vertex', a, b)
    d, big = _split_network(s, removable, protected, removed)
    for x in sources:
        d.add_edge(SOURCE, ('in', x), capacity=big)
    for y in sinks:
        d.add_edge(('out', y), SINK, capacity=big)
    value, flows = nx.maximum_flow(d, SOURCE, SINK)
    if value >= big:
        path = [n[1] for n in nx.shortest_path(_saturated_free(d), SOURCE, SINK)[1:-1] if n[0] == 'in']
        return CutAnswer(INFINITE, path, 'vertex', a, b)
    _, (reachable, _) = nx.minimum_cut(d, SOURCE, SINK)
    witness = sort_vertices(n[1] for n in reachable if n != SOURCE and n[0] == 'in' and ('out', n[1]) not in reachable)
    assert len(witness) == value, 'Vertex cut witness %s has wrong size %d' % (witness, value)
    return CutAnswer(int(value), witness, 'vertex', a, b)


def _saturated_free(d):
    g = nx.DiGraph()
    limit = max(c for _, _, c in d.edges(data='capacity'))
    g.add_edges_from((u, v) for u, v, c in d.edges(data='capacity') if c >= limit)
    g.add_nodes_from([SOURCE, SINK])
    return g


class USpec(object):
    """
    A presentation-expressible vertex set U: a base ('all', 'timid' or 'none'), explicit exclusions and inclusions
    and per gadget/family on/off flags. Text form: base[-v,v...][+v,v...][;id=on|off...]
    """
    Bases = ('all', 'timid', 'none')

    def __init__(self, base='all', include=(), exclude=(), flags=None):
        if base not in self.Bases:
            raise UnsupportedUSpec('Unknown U base %s' % base)
        self.base = base
        self.include = set(include)
        self.exclude = set(exclude)
        self.flags = dict(flags or {})

    @staticmethod
    def parse(text):
        text = (text or 'all').strip()
        flags = {}
        if ';' in text:
            text, rest = text.split(';', 1)
            for item in rest.split(';'):
                if '=' not in item:
                    raise UnsupportedUSpec('Malformed flag %s' % item)
                key, value = item.split('=', 1)
                if value not in ('on', 'off'):
                    raise UnsupportedUSpec('Flag %s must be on or off' % key)
                flags[key.strip()] = value == 'on'
        include, exclude = [], []
        base = text
        current = None
        token = ''
        for ch in text + '\0':
            if ch in '+-\0':
                if current is None:
                    base = token
                elif current == '+':
                    include.extend(v for v in token.split(',') if v)
                else:
                    exclude.extend(v for v in token.split(',') if v)
                current = ch
                token = ''
            else:
                token += ch
        return USpec(base.strip(), include, exclude, flags)

    def validate(self, p):
        for v in self.include | self.exclude:
            try:
                p.resolve(v)
            except UnresolvedRef as e:
                raise UnsupportedUSpec('U references %s which is not a vertex of %s' % (v, p.name)) from e
        known = set(getattr(p, 'gadget_by_id', {}).keys()) | set(getattr(p, 'family_by_id', {}).keys())
        for key in self.flags:
            if key not in known:
                raise UnsupportedUSpec('U flag for unknown gadget or family %s' % key)
        return self

    def contains(self, p, v):
        if v in self.exclude:
            return False
        if v in self.include:
            return True
        parts = v.split(':')
        if parts[0] in ('g', 'f') and len(parts) > 1 and parts[1] in self.flags:
            return self.flags[parts[1]]
        if self.base == 'all':
            return True
        if self.base == 'none':
            return False
        return engine(p).timid(v)

    def describe(self):
        text = self.base
        if self.exclude:
            text += '-' + ','.join(sort_vertices(self.exclude))
        if self.include:
            text += '+' + ','.join(sort_vertices(self.include))
        for key in sorted(self.flags):
            text += ';%s=%s' % (key, 'on' if self.flags[key] else 'off')
        return text

    def __repr__(self):
        return 'USpec(%s)' % self.describe()


class SimClass(object):
    """A class of the relation ~E: explicit members, absorbed clique regions, or omega many singletons in a region."""

    def __init__(self, members, regions=(), omega_singletons=False):
        self.members = sort_vertices(members)
        self.regions = sort_vertices(regions)
        self.omega_singletons = omega_singletons

    @property
    def size(self):
        if self.regions and not self.omega_singletons:
            return INFINITE
        return len(self.members)

    @property
    def multiplicity(self):
        return INFINITE if self.omega_singletons else 1

    def to_document(self):
        return {'members': self.members, 'regions': self.regions,
                'size': 'Infinite' if self.size == INFINITE else self.size,
                'multiplicity': 'omega' if self.omega_singletons else 1}


class BoundarySet(object):
    def __init__(self, explicit, families):
        self.explicit = sort_vertices(explicit)
        self.families = sorted(families)

    def subset_of(self, p, U):
        return all(U.contains(p, v) for v in self.explicit) and \
            all(U.contains(p, 'f:%s:0:hub' % f) for f in self.families)

    def outside(self, p, U):
        return [v for v in self.explicit if not U.contains(p, v)] + \
               ['f:%s:*:hub' % f for f in self.families if not U.contains(p, 'f:%s:0:hub' % f)]

    def to_document(self):
        return {'explicit': self.explicit, 'families': ['f:%s:*:hub' % f for f in self.families]}


def ray_nodes(s):
    """Skeleton nodes standing for one ray (or one class of rays): singleton seeds and explicit family members."""
    result = []
    for seed in s.seeds:
        if seed.shape == SINGLETON:
            result.append(seed.node)
        else:
            result.extend(seed.nodes())
    return result


class CutEngine(object):
    """Cut queries on one presentation; answers are memoized in an AnswerCache."""

    def __init__(self, p):
        self.p = p
        self.cache = AnswerCache()

    def _node(self, s, v):
        if v not in s.graph:
            raise UnresolvedRef('Vertex %s is not explicit in the skeleton of %s' % (v, self.p.name))
        return v

    def min_edge_cut(self, a, b, focus=(), removed=()):
        s = self.p.skeleton(focus)
        return min_edge_cut(s, a, b, removed)

    def ray_cut(self, r1, r2):
        f1, n1 = tail_target(self.p, r1.tail)
        f2, n2 = tail_target(self.p, r2.tail)
        s = self.p.skeleton(f1 + f2)
        return min_edge_cut(s, self._node(s, n1), self._node(s, n2))

    def edge_equivalent(self, r1, r2):
        self._check_prefix(r1)
        self._check_prefix(r2)
        if r1.tail == r2.tail:
            return True
        return not self.ray_cut(r1, r2).finite

    def _check_prefix(self, r):
        for a, b in zip(r.prefix, r.prefix[1:]):
            if not self.p.adjacent(a, b):
                raise UnresolvedRef('Ray prefix %s-%s is not an edge' % (a, b))

    def domination_cut(self, v, r):
        def compute():
            focus, node = tail_target(self.p, r.tail)
            s = self.p.skeleton(focus + [v])
            return min_edge_cut(s, self._node(s, v), self._node(s, node))
        return self.cache.remember('domination_cut', compute, vertex=v, tail=r.tail)

    def edge_dominates(self, v, r):
        self.p.resolve(v)
        self._check_prefix(r)
        if self.p.degree(v) != INFINITE:
            return False
        return not self.domination_cut(v, r).finite

    def timid(self, v):
        def compute():
            if self.p.degree(v) != INFINITE:
                return True
            s = self.p.skeleton([v])
            labels = omega_labels(s)
            return not any(labels[v] == labels[n] for n in ray_nodes(s))
        self.p.resolve(v)
        return self.cache.remember('timid', compute, vertex=v)

    def dominating(self, v):
        return self.p.degree(v) == INFINITE and not self.timid(v)

    def explicit_vertices(self):
        return self.p.skeleton().concrete_nodes()

    def timid_vertices(self):
        return [v for v in self.explicit_vertices() if self.timid(v)]

    def dominating_vertices(self):
        return [v for v in self.explicit_vertices() if self.dominating(v)]

    def sim_E(self, u, v):
        if u == v:
            self.p.resolve(u)
            return True
        s = self.p.skeleton([u, v])
        labels = omega_labels(s)
        return labels[u] == labels[v]

    def sim_E_cut(self, u, v):
        return self.cache.remember('sim_E_cut', lambda: min_edge_cut(self.p.skeleton([u, v]), u, v), u=u, v=v)

    def sim_A(self, u, v, cuttable):
        """u ~A v: no finite set of edges accepted by `cuttable` separates u from v."""
        if u == v:
            return True
        s = self.p.skeleton([u, v])
        return nx.has_path(omega_graph(s, cuttable), u, v)

    def in_E_t(self, e):
        return any(self.timid(x) for x in split_edge(e))

    def sim_E_t(self, u, v):
        return self.sim_A(u, v, self.in_E_t)

    def classes_sim_E(self):
        s = self.p.skeleton()
        result = []
        for comp in nx.connected_components(omega_graph(s)):
            members = [n for n in comp if s.is_concrete(n)]
            absorbed = [n for n in comp if not s.is_concrete(n) and s.absorbing(n)]
            if members or absorbed:
                result.append(SimClass(members, absorbed))
        for node in s.region_nodes():
            if not s.absorbing(node) and s.attr(node, 'infinite', True):
                result.append(SimClass([], [node], omega_singletons=True))
        return sorted(result, key=lambda c: vertex_key((c.members or c.regions)[0]))

    def _reachable(self, v, U):
        s = self.p.skeleton([v])
        d, big = _split_network(s, lambda x: U.contains(self.p, x), set([v]))
        g = nx.DiGraph()
        g.add_edges_from((a, b) for a, b, c in d.edges(data='capacity') if c >= big)
        g.add_node(('in', v))
        # hidden endpoints are not skeleton nodes
        reach = set(n[1] for n in nx.descendants(g, ('in', v)) if n[0] == 'in' and n[1] in s.graph)
        return s, reach | set([v])

    def u_timid(self, v, U):
        self.p.resolve(v)
        U.validate(self.p)
        s, reach = self._reachable(v, U)
        return not any(n in reach for n in ray_nodes(s))

    def u_dense(self, v, U):
        self.p.resolve(v)
        U.validate(self.p)
        s, reach = self._reachable(v, U)
        return any(not s.is_concrete(n) and s.attr(n, 'infinite', True) for n in reach)

    def u_separation(self, v, r, U):
        focus, node = tail_target(self.p, r.tail)
        s = self.p.skeleton(focus + [v])
        return min_vertex_cut(s, v, node, lambda x: U.contains(self.p, x))

    def boundary_tU(self, U):
        U.validate(self.p)
        explicit = [v for v in self.explicit_vertices() if self.u_timid(v, U) and self.u_dense(v, U)]
        families = []
        for seed in self.p.skeleton().hub_seeds:
            hub = seed.members[0][1]
            if self.u_timid(hub, U) and self.u_dense(hub, U):
                families.append(seed.owner)
        b = BoundarySet(explicit, families)
        logging.info('Boundary of U=%s in %s: %s' % (U.describe(), self.p.name, b.to_document()))
        return b


def engine(p):
    if getattr(p, '_cut_engine', None) is None:
        p._cut_engine = CutEngine(p)
    return p._cut_engine


def skeleton(p):
    return p.skeleton()


def edge_equivalent(p, r1, r2):
    return engine(p).edge_equivalent(r1, r2)


def edge_dominates(p, v, r):
    return engine(p).edge_dominates(v, r)


def timid(p, v):
    return engine(p).timid(v)


def sim_E(p, u, v):
    return engine(p).sim_E(u, v)


def classes_sim_E(p):
    return engine(p).classes_sim_E()


def u_timid(p, v, U):
    return engine(p).u_timid(v, U)


def u_dense(p, v, U):
    return engine(p).u_dense(v, U)


def boundary_tU(p, U):
    return engine(p).boundary_tU(U)


def check_alone_timid(p):
    """Every timid vertex alone in its ~E class keeps finitely many neighbors in each component of G minus it."""
    from endspace.Separation import Separator, components
    failures = []
    e = engine(p)
    for c in e.classes_sim_E():
        if len(c.members) != 1 or c.regions:
            continue
        v = c.members[0]
        if not e.timid(v) or p.degree(v) != INFINITE:
            continue
        s = p.skeleton([v])
        omega_nbrs = [n for n in s.graph.neighbors(v) if s.is_omega(v, n)]
        for rec in components(p, Separator('vertex', [v])):
            if rec.multiplicity == 1 and any(n in rec.nodes for n in omega_nbrs):
                failures.append((v, rec.representative))
    return failures


def check_timid_edge_separation(p):
    """For timid u and u not ~E v, some finite set of E_t edges separates them."""
    e = engine(p)
    failures = []
    vertices = e.explicit_vertices()
    for u in vertices:
        if not e.timid(u):
            continue
        for v in vertices:
            if v != u and not e.sim_E(u, v) and e.sim_E_t(u, v):
                failures.append((u, v))
    return failures


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    from endspace.catalog import load
    p = load('three_cliques')
    print(min_edge_cut(p.skeleton(), '~g:A', '~g:B'))
    print([c.to_document() for c in classes_sim_E(p)])
