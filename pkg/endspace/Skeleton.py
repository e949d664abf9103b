# -*- coding: utf-8 -*-
import logging

import networkx as nx

from endspace.FiniteGraph import vertex_key, edge_name, split_edge, sort_vertices

VERTEX = 'vertex'
TAIL = 'tail'
REST = 'rest'
JUNCTION = 'junction'

SINGLETON = 'Singleton'
OMEGA_FAMILY = 'OmegaFamily'


class Seed(object):
    """
    A symbolic class of rays living in the skeleton: either one region terminal (Singleton) or an omega-indexed
    family whose explicit members are region terminals and whose remaining members hide in rest nodes.

    Member labels are copy labels ('0', '1' or 'j.k'); rest labels are '*' for the whole family and 'j.*' for the
    members sharing the prefix 'j.'.
    """

    def __init__(self, id, shape, owner, members, rests=()):
        self.id = id
        self.shape = shape
        self.owner = owner
        self.members = list(members)
        self.rests = list(rests)

    @property
    def node(self):
        return self.members[0][1]

    def nodes(self):
        return [n for _, n in self.members]

    def __repr__(self):
        return 'Seed(%s, %s, %d members)' % (self.id, self.shape, len(self.members))


def rest_scope(label):
    return label[:-1] if label.endswith('*') else label


def in_scope(label, scope):
    return label.startswith(scope)


class Skeleton(object):
    """
    Finite contracted capacity graph of an infinite graph. Concrete nodes are vertices of the graph; region nodes
    (tails, rests, junctions) stand for infinite vertex sets. Every arc either carries a list of concrete edges
    (capacity = their number) or is an omega arc (capacity omega = budget + 1).
    """

    def __init__(self, source, graph, seeds, hub_seeds=(), window=None):
        self.source = source
        self.graph = graph
        self.seeds = list(seeds)
        self.hub_seeds = list(hub_seeds)
        self.window = window or {}
        self.edge_arcs = {}
        for u, v, data in graph.edges(data=True):
            for e in data.get('edges', []):
                self.edge_arcs[e] = (u, v)
        self.budget = len(self.edge_arcs)
        self.omega = self.budget + 1
        self._concrete = sort_vertices(n for n, d in graph.nodes(data=True) if d['kind'] == VERTEX)

    def __repr__(self):
        return 'Skeleton(%s, nodes=%d, unit arcs=%d)' % (self.source, self.graph.number_of_nodes(), self.budget)

    def unit_arcs(self):
        return sort_vertices(self.edge_arcs.keys())

    def concrete_nodes(self):
        return list(self._concrete)

    def nodes(self):
        return sort_vertices(self.graph.nodes())

    def kind(self, node):
        return self.graph.nodes[node]['kind']

    def attr(self, node, name, default=None):
        return self.graph.nodes[node].get(name, default)

    def is_concrete(self, node):
        return node in self.graph and self.graph.nodes[node]['kind'] == VERTEX

    def arc_capacity(self, u, v):
        data = self.graph.edges[u, v]
        if data.get('omega'):
            return self.omega
        return len(data.get('edges', []))

    def is_omega(self, u, v):
        return bool(self.graph.edges[u, v].get('omega'))

    def infinite_degree(self, node):
        return any(d.get('omega') for _, _, d in self.graph.edges(node, data=True))

    def region_nodes(self):
        return sort_vertices(n for n, d in self.graph.nodes(data=True) if d['kind'] != VERTEX)

    def infinite_regions(self):
        return sort_vertices(n for n, d in self.graph.nodes(data=True)
                             if d['kind'] != VERTEX and d.get('infinite', True))

    def seed_by_id(self, id):
        for s in self.seeds + self.hub_seeds:
            if s.id == id:
                return s
        return None

    def seed_nodes(self):
        result = []
        for s in self.seeds:
            result.extend(s.nodes())
        return result

    def omega_connected(self, u, v):
        omega_graph = nx.Graph()
        omega_graph.add_nodes_from([u, v])
        omega_graph.add_edges_from((a, b) for a, b, d in self.graph.edges(data=True) if d.get('omega'))
        return nx.has_path(omega_graph, u, v)

    def representative(self, node):
        if self.is_concrete(node):
            return node
        return self.attr(node, 'first', node)

    def describe(self):
        return {'source': self.source,
                'nodes': [dict(name=n, **self._plain(self.graph.nodes[n])) for n in self.nodes()],
                'arcs': [self._arc_doc(u, v) for u, v in sorted(self.graph.edges(), key=self._arc_key)],
                'budget': self.budget,
                'seeds': [{'id': s.id, 'shape': s.shape, 'members': s.members, 'rests': s.rests} for s in self.seeds],
                'window': self.window}

    def absorbing(self, node):
        return bool(self.graph.nodes[node].get('absorbing'))

    def hidden_endpoint(self, edge, node):
        """The vertex of `edge` that lies inside region `node`, or None when node is concrete."""
        if self.is_concrete(node):
            return None
        a, b = split_edge(edge)
        return b if self.is_concrete(a) else a

    def _plain(self, data):
        return dict((k, v) for k, v in data.items() if k in ('kind', 'rays', 'shatter', 'owner', 'first'))

    def _arc_key(self, arc):
        a, b = sorted(arc, key=vertex_key)
        return vertex_key(a), vertex_key(b)

    def _arc_doc(self, u, v):
        a, b = sorted((u, v), key=vertex_key)
        data = self.graph.edges[u, v]
        return {'u': a, 'v': b, 'capacity': 'omega' if data.get('omega') else len(data.get('edges', [])),
                'edges': sort_vertices(data.get('edges', []))}


class SkeletonGraphBuilder(object):
    """Accumulates skeleton nodes and arcs; parallel concrete edges between the same nodes share one arc."""

    def __init__(self):
        self.graph = nx.Graph()
        self.seeds = []
        self.hub_seeds = []

    def vertex(self, name, **attrs):
        if name not in self.graph:
            self.graph.add_node(name, kind=VERTEX, rays=False, **attrs)
        return name

    def region(self, name, kind, owner, first, rays, shatter=False, copy_size=None, copy_rays=False, infinite=True,
               absorbing=False):
        self.graph.add_node(name, kind=kind, owner=owner, first=first, rays=rays, shatter=shatter,
                            copy_size=copy_size, copy_rays=copy_rays, infinite=infinite, absorbing=absorbing)
        return name

    def unit(self, u, v, edge=None):
        if edge is None:
            edge = edge_name(u, v)
        if self.graph.has_edge(u, v):
            data = self.graph.edges[u, v]
            if not data.get('omega') and edge not in data['edges']:
                data['edges'].append(edge)
        else:
            self.graph.add_edge(u, v, omega=False, edges=[edge])

    def omega(self, u, v):
        if self.graph.has_edge(u, v):
            self.graph.edges[u, v]['omega'] = True
            self.graph.edges[u, v]['edges'] = []
        else:
            self.graph.add_edge(u, v, omega=True, edges=[])

    def build(self, source, window=None):
        s = Skeleton(source, self.graph, self.seeds, self.hub_seeds, window)
        logging.info('Built skeleton of %s: %d nodes, %d unit arcs, %d seeds' %
                     (source, self.graph.number_of_nodes(), s.budget, len(s.seeds)))
        return s


class PresentationSkeletonBuilder(SkeletonGraphBuilder):
    """
    Builds the skeleton of a Presentation. Every vertex carrying an attachment is explicit; rays and cliques keep
    an explicit prefix covering referenced positions, stars and families an explicit window of rays/copies whose
    remainder is one rest node. Vertices named in focus are made explicit as well.
    """
    Along_window = 4
    Family_window = 2
    Star_window = 2

    def __init__(self, p, focus=()):
        SkeletonGraphBuilder.__init__(self)
        self.p = p
        self.focus = [p.resolve(v) for v in focus]

    def _extents(self):
        p = self.p
        self.length = {}
        self.star_len = {}
        self.star_ray_len = {}
        self.copies = {}
        self.copy_len = {}
        self.nested = {}
        self.nested_len = {}
        for g in p.gadgets:
            if g.kind == 'StarOfRays':
                self.star_len[g.id] = self.Star_window
                self.star_ray_len[g.id] = {}
            else:
                self.length[g.id] = 1 if p.first_hosts[g.id] else 0
        for hub, target in p.links:
            self._need_vertex(hub)
        for host_vertex in list(p.attached_at.keys()) + list(p.fixed_hosted.keys()):
            self._need_vertex(host_vertex)
        for f in p.families:
            self.copies[f.id] = self.Family_window
            self.copy_len[f.id] = 0
            self.nested[f.id] = self.Star_window
            self.nested_len[f.id] = 1
            refs = [local for local, _ in f.per_copy_edges]
            if f.chained:
                refs.extend(f.chain_edge)
            for local in refs:
                self._need_local(f, local)
        for ref in self.focus:
            if ref.kind == 'gadget':
                g = self.p.gadget_by_id[ref.owner]
                if g.kind == 'StarOfRays':
                    k, i = ref.index
                    self.star_len[g.id] = max(self.star_len[g.id], k + 1)
                    self.star_ray_len[g.id][k] = max(self.star_ray_len[g.id].get(k, 1), i + 1)
                else:
                    self.length[g.id] = max(self.length[g.id], ref.index[0] + 1)
            elif ref.kind == 'family':
                f = self.p.family_by_id[ref.owner]
                self.copies[f.id] = max(self.copies[f.id], ref.copy + 1)
                self._need_local(f, ref.local)
        for f in p.families:
            for h in f.along_hosts():
                self.length[h.target] = max(self.length[h.target], self.Along_window)
        changed = True
        while changed:
            changed = False
            for f in p.families:
                along = f.along_hosts()
                if not along:
                    continue
                w = max([self.copies[f.id]] + [self.length[h.target] for h in along])
                if w != self.copies[f.id]:
                    self.copies[f.id] = w
                    changed = True
                for h in along:
                    if self.length[h.target] < w:
                        self.length[h.target] = w
                        changed = True

    def _need_vertex(self, name):
        ref = self.p.resolve(name)
        if ref.kind == 'gadget':
            g = self.p.gadget_by_id[ref.owner]
            if g.kind == 'StarOfRays':
                k, i = ref.index
                self.star_len[g.id] = max(self.star_len[g.id], k + 1)
                self.star_ray_len[g.id][k] = max(self.star_ray_len[g.id].get(k, 1), i + 1)
            else:
                self.length[g.id] = max(self.length[g.id], ref.index[0] + 1)

    def _need_local(self, f, local):
        kind = f.pattern.kind
        if kind == 'Ray':
            self.copy_len[f.id] = max(self.copy_len[f.id], int(local) + 1)
        elif kind == 'StarOfRays' and local != 'hub':
            k, i = [int(x) for x in local.split('.')]
            self.nested[f.id] = max(self.nested[f.id], k + 1)
            self.nested_len[f.id] = max(self.nested_len[f.id], i + 1)

    def build(self):
        self._extents()
        p = self.p
        for v in p.core.vertices:
            self.vertex('c:%s' % v)
        for u, v in p.core.edges:
            self.unit('c:%s' % u, 'c:%s' % v)
        for g in p.gadgets:
            if g.kind == 'Ray':
                self._ray(g)
            elif g.kind == 'OmegaClique':
                self._clique(g)
            else:
                self._star(g)
        for hub, target in p.links:
            self._link(hub, target)
        for f in p.families:
            self._family(f)
        window = {'along': self.Along_window, 'family': self.Family_window, 'star': self.Star_window,
                  'lengths': dict(self.length), 'copies': dict(self.copies)}
        return SkeletonGraphBuilder.build(self, p.name, window)

    def _ray(self, g):
        n = self.length[g.id]
        for i in range(n):
            self.vertex(g.vertex(i))
            if i > 0:
                self.unit(g.vertex(i - 1), g.vertex(i))
        tail = self.region('~g:%s' % g.id, TAIL, g.id, g.vertex(n), rays=True)
        if n > 0:
            self.unit(g.vertex(n - 1), tail, edge_name(g.vertex(n - 1), g.vertex(n)))
        for h in self.p.first_hosts[g.id]:
            self.vertex(h)
            self.unit(h, g.vertex(0))
        self.seeds.append(Seed('g:%s' % g.id, SINGLETON, g.id, [('', tail)]))

    def _clique(self, g):
        n = self.length[g.id]
        tail = self.region('~g:%s' % g.id, TAIL, g.id, g.vertex(n), rays=True, absorbing=True)
        for i in range(n):
            self.omega(self.vertex(g.vertex(i)), tail)
        for m in g.core_members:
            self.omega('c:%s' % m, tail)
        for h in self.p.first_hosts[g.id]:
            self.vertex(h)
            self.unit(h, g.vertex(0))
        self.seeds.append(Seed('g:%s' % g.id, SINGLETON, g.id, [('', tail)]))

    def _star(self, g):
        center = self.p.first_hosts[g.id][0]
        self.vertex(center)
        width = self.star_len[g.id]
        members = []
        for k in range(width):
            n = self.star_ray_len[g.id].get(k, 1)
            for i in range(n):
                self.vertex(g.vertex(k, i))
                if i > 0:
                    self.unit(g.vertex(k, i - 1), g.vertex(k, i))
            self.unit(center, g.vertex(k, 0))
            tail = self.region('~g:%s:%d' % (g.id, k), TAIL, g.id, g.vertex(k, n), rays=True)
            self.unit(g.vertex(k, n - 1), tail, edge_name(g.vertex(k, n - 1), g.vertex(k, n)))
            members.append((str(k), tail))
            if g.threaded and k > 0:
                self.unit(g.vertex(k - 1, 0), g.vertex(k, 0))
        rest = self.region('~g:%s:*' % g.id, REST, g.id, g.vertex(width, 0), rays=True,
                           shatter=not g.threaded, copy_rays=True)
        self.omega(center, rest)
        self.seeds.append(Seed('g:%s' % g.id, OMEGA_FAMILY, g.id, members, [('*', rest)]))
        if g.threaded:
            self.unit(g.vertex(width - 1, 0), rest, edge_name(g.vertex(width - 1, 0), g.vertex(width, 0)))
            self.seeds.append(Seed('g:%s:chain' % g.id, SINGLETON, g.id, [('', rest)]))

    def _link(self, hub, target):
        g = self.p.gadget_by_id[target]
        self.vertex(hub)
        self.omega(hub, '~g:%s' % target)
        if g.kind == 'Ray':
            for i in range(self.length[target]):
                self.unit(hub, g.vertex(i))

    def _local_node(self, f, j, local):
        return f.vertex(j, local)

    def _copy(self, f, j, members, rests, hub_members, thread_members):
        kind = f.pattern.kind
        if kind == 'SingleVertex' or kind == 'FiniteGraph':
            for local in f.pattern.locals_at_depth(1):
                self.vertex(f.vertex(j, local))
            for a, b in f.pattern.edges_at_depth(1):
                self.unit(f.vertex(j, a), f.vertex(j, b))
        elif kind == 'Ray':
            n = self.copy_len[f.id]
            for i in range(n):
                self.vertex(f.vertex(j, str(i)))
                if i > 0:
                    self.unit(f.vertex(j, str(i - 1)), f.vertex(j, str(i)))
            tail = self.region('~f:%s:%d' % (f.id, j), TAIL, f.id, f.vertex(j, str(n)), rays=True)
            if n > 0:
                self.unit(f.vertex(j, str(n - 1)), tail, edge_name(f.vertex(j, str(n - 1)), f.vertex(j, str(n))))
            members.append((str(j), tail))
        else:
            hub = self.vertex(f.vertex(j, 'hub'))
            width = self.nested[f.id]
            n = self.nested_len[f.id]
            for k in range(width):
                for i in range(n):
                    self.vertex(f.vertex(j, '%d.%d' % (k, i)))
                    if i > 0:
                        self.unit(f.vertex(j, '%d.%d' % (k, i - 1)), f.vertex(j, '%d.%d' % (k, i)))
                self.unit(hub, f.vertex(j, '%d.0' % k))
                tail = self.region('~f:%s:%d:%d' % (f.id, j, k), TAIL, f.id, f.vertex(j, '%d.%d' % (k, n)), rays=True)
                last = f.vertex(j, '%d.%d' % (k, n - 1))
                self.unit(last, tail, edge_name(last, f.vertex(j, '%d.%d' % (k, n))))
                members.append(('%d.%d' % (j, k), tail))
                if f.threaded and k > 0:
                    self.unit(f.vertex(j, '%d.0' % (k - 1)), f.vertex(j, '%d.0' % k))
            rest = self.region('~f:%s:%d:*' % (f.id, j), REST, f.id, f.vertex(j, '%d.0' % width), rays=True,
                               shatter=not f.threaded, copy_rays=True)
            self.omega(hub, rest)
            rests.append(('%d.*' % j, rest))
            hub_members.append((str(j), hub))
            if f.threaded:
                self.unit(f.vertex(j, '%d.0' % (width - 1)), rest,
                          edge_name(f.vertex(j, '%d.0' % (width - 1)), f.vertex(j, '%d.0' % width)))
                thread_members.append((str(j), rest))

    def _family(self, f):
        width = self.copies[f.id]
        members, rests, hub_members, thread_members = [], [], [], []
        for j in range(width):
            self._copy(f, j, members, rests, hub_members, thread_members)
            for local, host in f.per_copy_edges:
                self.vertex(host.vertex(j))
                self.unit(f.vertex(j, local), host.vertex(j))
            if f.chained and j > 0:
                a, b = f.chain_edge
                self.unit(f.vertex(j - 1, a), f.vertex(j, b))
        pattern = f.pattern
        rest = self.region('~f:%s' % f.id, REST, f.id, f.vertex(width, pattern.default_local),
                           rays=(not pattern.finite) or f.chained, shatter=not f.chained,
                           copy_size=pattern.size if pattern.finite else None, copy_rays=not pattern.finite)
        for h in f.fixed_hosts():
            self.omega(h.vertex(), rest)
        for h in f.along_hosts():
            self.omega('~g:%s' % h.target, rest)
        if f.chained:
            a, b = f.chain_edge
            self.unit(f.vertex(width - 1, a), rest, edge_name(f.vertex(width - 1, a), f.vertex(width, b)))
            self.seeds.append(Seed('f:%s:chain' % f.id, SINGLETON, f.id, [('', rest)]))
        if members:
            self.seeds.append(Seed('f:%s' % f.id, OMEGA_FAMILY, f.id, members, rests + [('*', rest)]))
        if hub_members:
            self.hub_seeds.append(Seed('hub:f:%s' % f.id, OMEGA_FAMILY, f.id, hub_members, [('*', rest)]))
        if thread_members:
            self.seeds.append(Seed('f:%s:threads' % f.id, OMEGA_FAMILY, f.id, thread_members, [('*', rest)]))
