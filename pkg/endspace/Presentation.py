# -*- coding: utf-8 -*-
from __future__ import print_function
import itertools
import logging
import re
import sys

import ujson

from endspace.FiniteGraph import FiniteGraph, SchemaError, DanglingRef, LoopEdge, UnresolvedRef, vertex_key, \
    edge_key, sort_vertices

INFINITE = float('inf')

FIRST_ONLY = 'FirstOnly'
ALL = 'All'
RAY = 'Ray'
OMEGA_CLIQUE = 'OmegaClique'
STAR_OF_RAYS = 'StarOfRays'
SINGLE_VERTEX = 'SingleVertex'

_identifier = re.compile(r'^[A-Za-z0-9_\-\.]+$')


def check_identifier(value, where):
    if not isinstance(value, str) or not _identifier.match(value):
        raise SchemaError('%s: invalid identifier %r' % (where, value))
    return value


def _is_index(value):
    return isinstance(value, int) and not isinstance(value, bool) and value >= 0


def _int_part(text):
    if not text.isdigit():
        raise UnresolvedRef('Not an index: %s' % text)
    return int(text)


class VertexRef(object):
    """
    Structured address of a vertex: Core(v) | Gadget(id, index...) | Family(id, copy, local).
    """

    def __init__(self, kind, owner, index=(), local=None):
        self.kind = kind
        self.owner = owner
        self.index = tuple(index)
        self.local = local
        if kind == 'core':
            self.name = 'c:%s' % owner
        elif kind == 'gadget':
            self.name = 'g:%s:%s' % (owner, ':'.join(str(i) for i in self.index))
        else:
            self.name = 'f:%s:%d:%s' % (owner, self.index[0], local)

    @property
    def copy(self):
        return self.index[0] if self.kind == 'family' else None

    def __eq__(self, other):
        return isinstance(other, VertexRef) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return 'VertexRef(%s)' % self.name

    def sort_key(self):
        return vertex_key(self.name)


class Host(object):
    """Where an attachment or per-copy edge lands: a core vertex, a gadget position, or every vertex of a gadget."""

    def __init__(self, kind, target, position=None):
        self.kind = kind
        self.target = target
        self.position = position

    @staticmethod
    def parse(doc, where):
        if isinstance(doc, str):
            return Host('core', check_identifier(doc, where))
        if isinstance(doc, dict):
            if 'along' in doc:
                return Host('along', check_identifier(doc['along'], where))
            if 'gadget' in doc and 'position' in doc:
                if not _is_index(doc['position']):
                    raise SchemaError('%s: position must be a non-negative integer' % where)
                return Host('position', check_identifier(doc['gadget'], where), doc['position'])
        raise SchemaError('%s: malformed host %r' % (where, doc))

    def vertex(self, copy=None):
        if self.kind == 'core':
            return 'c:%s' % self.target
        if self.kind == 'position':
            return 'g:%s:%d' % (self.target, self.position)
        return 'g:%s:%d' % (self.target, copy)

    def to_document(self):
        if self.kind == 'core':
            return self.target
        if self.kind == 'position':
            return {'gadget': self.target, 'position': self.position}
        return {'along': self.target}

    def __eq__(self, other):
        return isinstance(other, Host) and (self.kind, self.target, self.position) == \
            (other.kind, other.target, other.position)

    def __hash__(self):
        return hash((self.kind, self.target, self.position))

    def __repr__(self):
        return 'Host(%s)' % ujson.dumps(self.to_document())


class Gadget(object):
    kind = None

    def __init__(self, id, attachments):
        self.id = id
        self.attachments = list(attachments)

    def vertex(self, *index):
        return 'g:%s:%s' % (self.id, ':'.join(str(i) for i in index))

    def to_document(self):
        return {'id': self.id, 'kind': self.kind,
                'attachments': [{'host': h.to_document(), 'mode': m} for h, m in self.attachments]}


class RayGadget(Gadget):
    kind = RAY
    index_arity = 1

    def vertices_at_depth(self, n):
        return [self.vertex(i) for i in range(n)]

    def depth_of(self, index):
        return index[0] + 1


class OmegaCliqueGadget(Gadget):
    kind = OMEGA_CLIQUE
    index_arity = 1

    def __init__(self, id, attachments, core_members):
        Gadget.__init__(self, id, attachments)
        self.core_members = list(core_members)

    def vertices_at_depth(self, n):
        return [self.vertex(i) for i in range(n)]

    def depth_of(self, index):
        return index[0] + 1

    def to_document(self):
        doc = Gadget.to_document(self)
        doc['core_members'] = list(self.core_members)
        return doc


class StarOfRaysGadget(Gadget):
    kind = STAR_OF_RAYS
    index_arity = 2

    def __init__(self, id, attachments, threaded=False):
        Gadget.__init__(self, id, attachments)
        self.threaded = threaded

    def vertices_at_depth(self, n):
        return [self.vertex(k, i) for k in range(n) for i in range(n)]

    def depth_of(self, index):
        return max(index) + 1

    def to_document(self):
        doc = Gadget.to_document(self)
        if self.threaded:
            doc['threaded'] = True
        return doc


class SingleVertexPattern(object):
    kind = SINGLE_VERTEX
    finite = True
    size = 1
    default_local = '0'

    def locals_at_depth(self, n):
        return ['0']

    def valid_local(self, local):
        return local == '0'

    def local_depth(self, local):
        return 1

    def edges_at_depth(self, n):
        return []

    def neighbor_parts(self, local):
        return [], []

    def to_document(self):
        return SINGLE_VERTEX


class RayPattern(object):
    kind = RAY
    finite = False
    size = None
    default_local = '0'

    def locals_at_depth(self, n):
        return [str(i) for i in range(n)]

    def valid_local(self, local):
        return local.isdigit() and str(int(local)) == local

    def local_depth(self, local):
        return int(local) + 1

    def edges_at_depth(self, n):
        return [(str(i), str(i + 1)) for i in range(n - 1)]

    def neighbor_parts(self, local):
        i = int(local)
        result = [str(i + 1)]
        if i > 0:
            result.append(str(i - 1))
        return result, []

    def to_document(self):
        return RAY


class StarPattern(object):
    """A star of rays inside every copy: local 'hub' and locals 'k.i' for vertex i of ray k."""
    kind = STAR_OF_RAYS
    finite = False
    size = None
    default_local = 'hub'

    def __init__(self, threaded=False):
        self.threaded = threaded

    def locals_at_depth(self, n):
        return ['hub'] + ['%d.%d' % (k, i) for k in range(n) for i in range(n)]

    def valid_local(self, local):
        if local == 'hub':
            return True
        parts = local.split('.')
        return len(parts) == 2 and all(p.isdigit() and str(int(p)) == p for p in parts)

    def local_depth(self, local):
        if local == 'hub':
            return 1
        k, i = local.split('.')
        return max(int(k), int(i)) + 1

    def edges_at_depth(self, n):
        result = []
        for k in range(n):
            result.append(('hub', '%d.0' % k))
            for i in range(n - 1):
                result.append(('%d.%d' % (k, i), '%d.%d' % (k, i + 1)))
            if self.threaded and k + 1 < n:
                result.append(('%d.0' % k, '%d.0' % (k + 1)))
        return result

    def neighbor_parts(self, local):
        if local == 'hub':
            return [], [lambda: ('%d.0' % k for k in itertools.count())]
        k, i = [int(x) for x in local.split('.')]
        result = ['%d.%d' % (k, i + 1)]
        if i > 0:
            result.append('%d.%d' % (k, i - 1))
        else:
            result.append('hub')
            if self.threaded:
                result.append('%d.0' % (k + 1))
                if k > 0:
                    result.append('%d.0' % (k - 1))
        return result, []

    def to_document(self):
        return STAR_OF_RAYS


class GraphPattern(object):
    """A finite connected graph with a declared boundary."""
    kind = 'FiniteGraph'
    finite = True

    def __init__(self, graph, boundary):
        self.graph = graph
        self.boundary = list(boundary)
        self.size = len(graph)
        self.default_local = self.boundary[0]

    def locals_at_depth(self, n):
        return list(self.graph.vertices)

    def valid_local(self, local):
        return local in self.graph

    def local_depth(self, local):
        return 1

    def edges_at_depth(self, n):
        return list(self.graph.edges)

    def neighbor_parts(self, local):
        return self.graph.neighbors(local), []

    def to_document(self):
        return {'vertices': list(self.graph.vertices), 'edges': [list(e) for e in self.graph.edges],
                'boundary': list(self.boundary)}


class Family(object):
    """
    An omega-indexed family of isomorphic copies of a pattern. Copy j's vertex `local` is named f:<id>:<j>:<local>.
    per_copy_edges holds (local, Host) pairs; an `along` host attaches copy j to vertex j of the host gadget.
    """

    def __init__(self, id, pattern, host, per_copy_edges, chained=False, chain_edge=None):
        self.id = id
        self.pattern = pattern
        self.host = host
        self.per_copy_edges = list(per_copy_edges)
        self.chained = chained
        if chain_edge is None:
            chain_edge = (pattern.default_local, pattern.default_local)
        self.chain_edge = tuple(chain_edge)

    @property
    def threaded(self):
        return getattr(self.pattern, 'threaded', False)

    def vertex(self, copy, local):
        return 'f:%s:%d:%s' % (self.id, copy, local)

    def copy_edges(self, copy):
        return [(self.vertex(copy, local), host.vertex(copy)) for local, host in self.per_copy_edges]

    def fixed_hosts(self):
        return [h for _, h in self.per_copy_edges if h.kind != 'along']

    def along_hosts(self):
        return [h for _, h in self.per_copy_edges if h.kind == 'along']

    def to_document(self):
        doc = {'id': self.id, 'pattern': self.pattern.to_document(),
               'host': self.host.to_document() if self.host is not None else None,
               'per_copy_edges': [[local, h.to_document()] for local, h in self.per_copy_edges],
               'chained': self.chained}
        if self.chained:
            doc['chain_edge'] = list(self.chain_edge)
        if self.threaded:
            doc['threaded'] = True
        return doc


class Truncation(object):
    """
    The finite graph of depth n: rays cut to n vertices, cliques to n fresh vertices, stars to n rays of length n
    and families to their first n copies. frontier holds the vertices whose neighborhood is incomplete.
    """

    def __init__(self, depth, graph, frontier, source=None):
        self.depth = depth
        self.graph = graph
        self.frontier = frozenset(frontier)
        self.source = source

    def __repr__(self):
        return 'Truncation(%s, n=%d, |V|=%d, frontier=%d)' % (self.source, self.depth, len(self.graph),
                                                              len(self.frontier))


def merge_streams(finite, streams):
    """Enumerates the finite neighbors first, then round-robin over the infinite streams, without repetitions."""
    seen = set()
    for u in finite:
        if u not in seen:
            seen.add(u)
            yield u
    iterators = [s() for s in streams]
    while iterators:
        for it in iterators:
            u = next(it)
            if u not in seen:
                seen.add(u)
                yield u


class InfiniteGraph(object):
    """
    Common surface of presentations and of the derived presentations built by the transforms: vertex resolution,
    lazy adjacency, truncations and the cut skeleton.
    """
    name = None

    def resolve(self, v):
        raise NotImplementedError()

    def neighbor_parts(self, v):
        """:return: (finite sorted neighbor list, list of factories of infinite neighbor iterators)"""
        raise NotImplementedError()

    def depth_of(self, v):
        raise NotImplementedError()

    def truncate(self, n):
        raise NotImplementedError()

    def build_skeleton(self, focus):
        raise NotImplementedError()

    def neighbors(self, v):
        finite, streams = self.neighbor_parts(v)
        return merge_streams(finite, streams)

    def degree(self, v):
        finite, streams = self.neighbor_parts(v)
        if streams:
            return INFINITE
        return len(set(finite))

    def adjacent(self, u, v):
        if u == v:
            return False
        finite, streams = self.neighbor_parts(u)
        if v in finite:
            return True
        if not streams:
            self.resolve(v)
            return False
        n = max(self.depth_of(u), self.depth_of(v))
        return self.truncate(n).graph.has_edge(u, v)

    def frontier_of(self, graph):
        frontier = set()
        for v in graph.vertices:
            d = self.degree(v)
            if d == INFINITE or d > graph.degree(v):
                frontier.add(v)
        return frontier

    def skeleton(self, focus=()):
        """
        The finite capacity skeleton, cached per focus set. Vertices named in focus are made explicit nodes.
        """
        if not hasattr(self, '_skeletons'):
            self._skeletons = {}
        key = frozenset(focus)
        if key not in self._skeletons:
            for v in key:
                self.resolve(v)
            self._skeletons[key] = self.build_skeleton(sort_vertices(key))
        return self._skeletons[key]


class Presentation(InfiniteGraph):
    """
    A finitely presented countable simple graph: a finite core plus Ray / OmegaClique / StarOfRays gadgets and
    omega-indexed families. Immutable once parsed.
    """

    def __init__(self, name, core, gadgets, families, connected_hint=True):
        self.name = name
        self.core = core
        self.gadgets = sorted(gadgets, key=lambda g: vertex_key(g.id))
        self.families = sorted(families, key=lambda f: vertex_key(f.id))
        self.connected_hint = connected_hint
        self.gadget_by_id = dict((g.id, g) for g in self.gadgets)
        self.family_by_id = dict((f.id, f) for f in self.families)
        self._validate()
        self._index()

    def _check_host(self, host, where, owner=None):
        if host.kind == 'core':
            if host.target not in self.core:
                raise DanglingRef('%s: core vertex %s not declared' % (where, host.target))
            return
        if host.target not in self.gadget_by_id:
            raise DanglingRef('%s: gadget %s not declared' % (where, host.target))
        if host.target == owner:
            raise SchemaError('%s: gadget %s cannot host itself' % (where, owner))
        if self.gadget_by_id[host.target].kind == STAR_OF_RAYS:
            raise SchemaError('%s: a StarOfRays gadget cannot host attachments' % where)

    def _validate(self):
        ids = [g.id for g in self.gadgets] + [f.id for f in self.families]
        if len(ids) != len(set(ids)):
            raise SchemaError('Duplicate gadget or family identifier in %s' % self.name)
        for g in self.gadgets:
            where = 'gadget %s' % g.id
            for host, mode in g.attachments:
                self._check_host(host, where, g.id)
                if mode not in (FIRST_ONLY, ALL):
                    raise SchemaError('%s: unknown attachment mode %s' % (where, mode))
                if host.kind == 'along' and mode == ALL:
                    raise SchemaError('%s: All-mode attachment along a gadget is not presentable' % where)
            if g.kind == STAR_OF_RAYS:
                if len(g.attachments) != 1 or g.attachments[0][1] != FIRST_ONLY or \
                        g.attachments[0][0].kind == 'along':
                    raise SchemaError('%s: a StarOfRays needs exactly one FirstOnly center host' % where)
            if g.kind == OMEGA_CLIQUE:
                if len(set(g.core_members)) != len(g.core_members):
                    raise SchemaError('%s: core_members must be pairwise distinct' % where)
                for m in g.core_members:
                    if m not in self.core:
                        raise DanglingRef('%s: core member %s not declared' % (where, m))
        for f in self.families:
            where = 'family %s' % f.id
            for local, host in f.per_copy_edges:
                if not f.pattern.valid_local(local):
                    raise DanglingRef('%s: pattern has no vertex %s' % (where, local))
                self._check_host(host, where)
            if f.host is not None:
                self._check_host(f.host, where)
            a, b = f.chain_edge
            if not f.pattern.valid_local(a) or not f.pattern.valid_local(b):
                raise DanglingRef('%s: chain edge references missing pattern vertices' % where)

    def _index(self):
        self.links = []
        self.first_hosts = dict((g.id, []) for g in self.gadgets)
        self.attached_at = {}
        self.hub_links = {}
        self.linked_hubs = dict((g.id, []) for g in self.gadgets)
        self.fixed_hosted = {}
        self.along_hosted = dict((g.id, []) for g in self.gadgets)
        self.clique_of = {}
        for g in self.gadgets:
            for host, mode in g.attachments:
                if host.kind == 'along':
                    self.links.append((g.vertex(0), host.target))
                elif mode == ALL:
                    self.links.append((host.vertex(), g.id))
                else:
                    self.first_hosts[g.id].append(host.vertex())
                    self.attached_at.setdefault(host.vertex(), []).append(g.id)
            if g.kind == OMEGA_CLIQUE:
                for m in g.core_members:
                    self.clique_of.setdefault(m, []).append(g.id)
        for hub, target in self.links:
            self.hub_links.setdefault(hub, []).append(target)
            self.linked_hubs[target].append(hub)
        for f in self.families:
            for local, host in f.per_copy_edges:
                if host.kind == 'along':
                    self.along_hosted[host.target].append((f.id, local))
                else:
                    self.fixed_hosted.setdefault(host.vertex(), []).append((f.id, local))

    def __repr__(self):
        return 'Presentation(%s)' % self.name

    def resolve(self, v):
        if not isinstance(v, str):
            raise UnresolvedRef('Not a vertex name: %r' % (v,))
        parts = v.split(':')
        kind = parts[0]
        if kind == 'c' and len(parts) == 2 and parts[1] in self.core:
            return VertexRef('core', parts[1])
        if kind == 'g' and len(parts) >= 3 and parts[1] in self.gadget_by_id:
            g = self.gadget_by_id[parts[1]]
            if len(parts) - 2 == g.index_arity:
                return VertexRef('gadget', g.id, [_int_part(x) for x in parts[2:]])
        if kind == 'f' and len(parts) == 4 and parts[1] in self.family_by_id:
            f = self.family_by_id[parts[1]]
            if f.pattern.valid_local(parts[3]):
                return VertexRef('family', f.id, [_int_part(parts[2])], parts[3])
        raise UnresolvedRef('Vertex %s does not resolve in %s' % (v, self.name))

    def depth_of(self, v):
        ref = self.resolve(v)
        if ref.kind == 'core':
            return 1
        if ref.kind == 'gadget':
            return self.gadget_by_id[ref.owner].depth_of(ref.index)
        f = self.family_by_id[ref.owner]
        return max(ref.copy + 1, f.pattern.local_depth(ref.local))

    def _hosted_parts(self, v, finite, streams):
        for gid in self.attached_at.get(v, []):
            g = self.gadget_by_id[gid]
            if g.kind == STAR_OF_RAYS:
                streams.append(lambda g=g: (g.vertex(k, 0) for k in itertools.count()))
            else:
                finite.append(g.vertex(0))
        for target in self.hub_links.get(v, []):
            t = self.gadget_by_id[target]
            streams.append(lambda t=t: (t.vertex(i) for i in itertools.count()))
        for fid, local in self.fixed_hosted.get(v, []):
            f = self.family_by_id[fid]
            streams.append(lambda f=f, local=local: (f.vertex(j, local) for j in itertools.count()))

    def neighbor_parts(self, v):
        ref = self.resolve(v)
        finite = []
        streams = []
        if ref.kind == 'core':
            finite.extend('c:%s' % u for u in self.core.neighbors(ref.owner))
            for cid in self.clique_of.get(ref.owner, []):
                k = self.gadget_by_id[cid]
                finite.extend('c:%s' % m for m in k.core_members if m != ref.owner)
                streams.append(lambda k=k: (k.vertex(i) for i in itertools.count()))
        elif ref.kind == 'gadget':
            g = self.gadget_by_id[ref.owner]
            if g.kind == STAR_OF_RAYS:
                k, i = ref.index
                finite.append(g.vertex(k, i + 1))
                if i > 0:
                    finite.append(g.vertex(k, i - 1))
                else:
                    finite.extend(self.first_hosts[g.id])
                    if g.threaded:
                        finite.append(g.vertex(k + 1, 0))
                        if k > 0:
                            finite.append(g.vertex(k - 1, 0))
            else:
                i = ref.index[0]
                if g.kind == RAY:
                    finite.append(g.vertex(i + 1))
                    if i > 0:
                        finite.append(g.vertex(i - 1))
                else:
                    finite.extend('c:%s' % m for m in g.core_members)
                    streams.append(lambda g=g, i=i: (g.vertex(j) for j in itertools.count() if j != i))
                if i == 0:
                    finite.extend(self.first_hosts[g.id])
                finite.extend(h for h in self.linked_hubs[g.id])
                for fid, local in self.along_hosted[g.id]:
                    finite.append(self.family_by_id[fid].vertex(i, local))
        else:
            f = self.family_by_id[ref.owner]
            j = ref.copy
            inner, inner_streams = f.pattern.neighbor_parts(ref.local)
            finite.extend(f.vertex(j, l) for l in inner)
            for s in inner_streams:
                streams.append(lambda s=s, f=f, j=j: (f.vertex(j, l) for l in s()))
            for local, host in f.per_copy_edges:
                if local == ref.local:
                    finite.append(host.vertex(j))
            if f.chained:
                a, b = f.chain_edge
                if ref.local == a:
                    finite.append(f.vertex(j + 1, b))
                if ref.local == b and j > 0:
                    finite.append(f.vertex(j - 1, a))
        self._hosted_parts(v, finite, streams)
        finite = sort_vertices(set(u for u in finite if u != v))
        return finite, streams

    def vertices_at_depth(self, n):
        result = ['c:%s' % v for v in self.core.vertices]
        for g in self.gadgets:
            result.extend(g.vertices_at_depth(n))
            if g.kind == OMEGA_CLIQUE:
                result.extend('c:%s' % m for m in g.core_members)
        for f in self.families:
            for j in range(n):
                result.extend(f.vertex(j, l) for l in f.pattern.locals_at_depth(n))
        return result

    def candidate_edges(self, n):
        """All G-edges whose endpoints could lie in the depth-n vertex set; filtered by the caller."""
        result = [('c:%s' % u, 'c:%s' % v) for u, v in self.core.edges]
        for g in self.gadgets:
            if g.kind == RAY:
                result.extend((g.vertex(i), g.vertex(i + 1)) for i in range(n - 1))
            elif g.kind == OMEGA_CLIQUE:
                members = ['c:%s' % m for m in g.core_members] + [g.vertex(i) for i in range(n)]
                result.extend(itertools.combinations(members, 2))
            else:
                for k in range(n):
                    result.extend((h, g.vertex(k, 0)) for h in self.first_hosts[g.id])
                    result.extend((g.vertex(k, i), g.vertex(k, i + 1)) for i in range(n - 1))
                    if g.threaded and k + 1 < n:
                        result.append((g.vertex(k, 0), g.vertex(k + 1, 0)))
                continue
            result.extend((h, g.vertex(0)) for h in self.first_hosts[g.id])
        for hub, target in self.links:
            t = self.gadget_by_id[target]
            result.extend((hub, t.vertex(i)) for i in range(n))
        for f in self.families:
            for j in range(n):
                result.extend((f.vertex(j, a), f.vertex(j, b)) for a, b in f.pattern.edges_at_depth(n))
                result.extend(f.copy_edges(j))
                if f.chained and j + 1 < n:
                    a, b = f.chain_edge
                    result.append((f.vertex(j, a), f.vertex(j + 1, b)))
        return result

    def truncate(self, n):
        if n < 1:
            raise ValueError('Truncation depth must be at least 1, got %s' % n)
        vertices = set(self.vertices_at_depth(n))
        edges = set()
        for u, v in self.candidate_edges(n):
            if u != v and u in vertices and v in vertices:
                edges.add(edge_key(u, v))
        graph = FiniteGraph(vertices, edges)
        return Truncation(n, graph, self.frontier_of(graph), self.name)

    def build_skeleton(self, focus):
        from endspace.Skeleton import PresentationSkeletonBuilder
        return PresentationSkeletonBuilder(self, focus).build()

    def default_local(self, family_id):
        return self.family_by_id[family_id].pattern.default_local

    def to_document(self):
        return {'name': self.name,
                'connected_hint': self.connected_hint,
                'core': {'vertices': list(self.core.vertices), 'edges': [list(e) for e in self.core.edges]},
                'gadgets': [g.to_document() for g in self.gadgets],
                'families': [f.to_document() for f in self.families]}

    def dumps(self):
        return ujson.dumps(self.to_document(), sort_keys=True)


def _parse_gadget(doc):
    if not isinstance(doc, dict):
        raise SchemaError('Gadget declaration must be an object, got %r' % (doc,))
    gid = check_identifier(doc.get('id'), 'gadget id')
    where = 'gadget %s' % gid
    attachments = []
    for att in doc.get('attachments', []):
        if not isinstance(att, dict) or 'host' not in att:
            raise SchemaError('%s: malformed attachment %r' % (where, att))
        attachments.append((Host.parse(att['host'], where), att.get('mode', FIRST_ONLY)))
    kind = doc.get('kind')
    if kind == RAY:
        return RayGadget(gid, attachments)
    if kind == OMEGA_CLIQUE:
        members = doc.get('core_members', [])
        if not isinstance(members, list):
            raise SchemaError('%s: core_members must be a list' % where)
        return OmegaCliqueGadget(gid, attachments, [check_identifier(m, where) for m in members])
    if kind == STAR_OF_RAYS:
        return StarOfRaysGadget(gid, attachments, bool(doc.get('threaded', False)))
    raise SchemaError('%s: unknown kind %r' % (where, kind))


def _parse_pattern(doc, where, threaded):
    if doc == SINGLE_VERTEX:
        return SingleVertexPattern()
    if doc == RAY:
        return RayPattern()
    if doc == STAR_OF_RAYS:
        return StarPattern(threaded)
    if isinstance(doc, dict):
        vertices = [check_identifier(v, where) for v in doc.get('vertices', [])]
        edges = doc.get('edges', [])
        if not vertices or any(not isinstance(e, list) or len(e) != 2 for e in edges):
            raise SchemaError('%s: malformed pattern graph' % where)
        graph = FiniteGraph(vertices, [tuple(e) for e in edges])
        if len(graph.components()) != 1:
            raise SchemaError('%s: pattern graph must be connected' % where)
        boundary = doc.get('boundary', [])
        if not boundary:
            raise SchemaError('%s: pattern graph needs a non-empty boundary' % where)
        for b in boundary:
            if b not in graph:
                raise DanglingRef('%s: boundary vertex %s not in pattern' % (where, b))
        return GraphPattern(graph, boundary)
    raise SchemaError('%s: unknown pattern %r' % (where, doc))


def _parse_family(doc):
    if not isinstance(doc, dict):
        raise SchemaError('Family declaration must be an object, got %r' % (doc,))
    fid = check_identifier(doc.get('id'), 'family id')
    where = 'family %s' % fid
    pattern = _parse_pattern(doc.get('pattern'), where, bool(doc.get('threaded', False)))
    host = Host.parse(doc['host'], where) if doc.get('host') is not None else None
    per_copy = []
    for item in doc.get('per_copy_edges', []):
        if not isinstance(item, list) or len(item) != 2 or not isinstance(item[0], str):
            raise SchemaError('%s: malformed per-copy edge %r' % (where, item))
        if item[1] is None:
            if host is None:
                raise SchemaError('%s: per-copy edge without host and no family host' % where)
            per_copy.append((item[0], host))
        else:
            per_copy.append((item[0], Host.parse(item[1], where)))
    if not per_copy and host is not None:
        per_copy.append((pattern.default_local, host))
    chain_edge = doc.get('chain_edge')
    if chain_edge is not None:
        if not isinstance(chain_edge, list) or len(chain_edge) != 2:
            raise SchemaError('%s: chain_edge must be a pair' % where)
        chain_edge = tuple(chain_edge)
    return Family(fid, pattern, host, per_copy, bool(doc.get('chained', False)), chain_edge)


def parse_presentation(text):
    """
    Parses a presentation document (JSON text or an already decoded object) and validates it.

    :param text: document with fields name, core{vertices,edges}, gadgets[], families[], connected_hint
    :return: the Presentation
    """
    if isinstance(text, bytes):
        text = text.decode('utf-8')
    if isinstance(text, str):
        try:
            doc = ujson.loads(text)
        except ValueError as e:
            raise SchemaError('Presentation document is not valid JSON: %s' % e) from e
    else:
        doc = text
    if not isinstance(doc, dict):
        raise SchemaError('Presentation document must be an object')
    name = doc.get('name')
    if not isinstance(name, str) or not name:
        raise SchemaError('Presentation needs a non-empty name')
    core_doc = doc.get('core', {'vertices': [], 'edges': []})
    if not isinstance(core_doc, dict):
        raise SchemaError('core must be an object')
    vertices = [check_identifier(v, 'core vertex') for v in core_doc.get('vertices', [])]
    if len(set(vertices)) != len(vertices):
        raise SchemaError('Duplicate core vertex in %s' % name)
    edges = []
    seen = set()
    for e in core_doc.get('edges', []):
        if not isinstance(e, list) or len(e) != 2:
            raise SchemaError('Malformed core edge %r' % (e,))
        if e[0] == e[1]:
            raise LoopEdge('Loop at core vertex %s' % e[0])
        key = edge_key(e[0], e[1])
        if key in seen:
            raise SchemaError('Parallel core edge %s-%s' % key)
        seen.add(key)
        edges.append(key)
    core = FiniteGraph(vertices, edges)
    gadgets = [_parse_gadget(g) for g in doc.get('gadgets', [])]
    families = [_parse_family(f) for f in doc.get('families', [])]
    p = Presentation(name, core, gadgets, families, bool(doc.get('connected_hint', True)))
    logging.info('Parsed presentation %s: %d core vertices, %d gadgets, %d families' %
                 (name, len(core), len(gadgets), len(families)))
    return p


def truncate(p, n):
    return p.truncate(n)


def neighbors(p, v):
    return p.neighbors(v)


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    demo = parse_presentation({'name': 'star', 'core': {'vertices': ['c'], 'edges': []},
                               'gadgets': [{'id': 's', 'kind': STAR_OF_RAYS,
                                            'attachments': [{'host': 'c', 'mode': FIRST_ONLY}]}]})
    print(demo.truncate(2))
    print(list(itertools.islice(demo.neighbors('c:c'), 5)))
