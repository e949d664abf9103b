# -*- coding: utf-8 -*-
from __future__ import print_function
import logging
import sys

import networkx as nx

from endspace.FiniteGraph import sort_vertices, vertex_key

SOURCE = ('source',)
SINK = ('sink',)


class TargetTooSmall(Exception):
    pass


class Star(object):
    """k paths from a center to distinct tips in D, pairwise meeting only at the center."""
    kind = 'Star'

    def __init__(self, center, tips, paths):
        self.center = center
        self.tips = tips
        self.paths = paths

    def __repr__(self):
        return 'Star(%s, %d tips)' % (self.center, len(self.tips))

    def verify(self, graph, D):
        D = set(D)
        assert len(set(self.tips)) == len(self.tips), 'Star tips repeat: %s' % self.tips
        seen = set()
        for tip, path in zip(self.tips, self.paths):
            assert path[0] == self.center and path[-1] == tip, 'Star path %s does not run center to tip' % path
            assert tip in D and tip != self.center, 'Star tip %s is not a target' % tip
            for a, b in zip(path, path[1:]):
                assert graph.has_edge(a, b), 'Star path %s uses a non-edge %s-%s' % (path, a, b)
            inner = set(path[1:])
            assert not inner & seen, 'Star paths meet outside the center at %s' % sorted(inner & seen)
            seen |= inner
        return True

    def to_document(self):
        return {'kind': self.kind, 'center': self.center, 'tips': self.tips, 'paths': self.paths}


class Comb(object):
    """A spine path plus k pairwise disjoint paths from the spine to distinct teeth in D; a tooth may sit on the spine."""
    kind = 'Comb'

    def __init__(self, spine, teeth, paths):
        self.spine = spine
        self.teeth = teeth
        self.paths = paths

    def __repr__(self):
        return 'Comb(spine of %d, %d teeth)' % (len(self.spine), len(self.teeth))

    def verify(self, graph, D):
        D = set(D)
        spine = set(self.spine)
        assert len(spine) == len(self.spine), 'Comb spine repeats a vertex'
        for a, b in zip(self.spine, self.spine[1:]):
            assert graph.has_edge(a, b), 'Comb spine uses a non-edge %s-%s' % (a, b)
        seen = set()
        for tooth, path in zip(self.teeth, self.paths):
            assert tooth in D and path[-1] == tooth, 'Comb path %s does not end at tooth %s' % (path, tooth)
            assert path[0] in spine and not set(path[1:]) & spine, 'Comb path %s leaves the spine twice' % path
            for a, b in zip(path, path[1:]):
                assert graph.has_edge(a, b), 'Comb path %s uses a non-edge %s-%s' % (path, a, b)
            assert not set(path) & seen, 'Comb paths meet at %s' % sorted(set(path) & seen)
            seen |= set(path)
        return True

    def to_document(self):
        return {'kind': self.kind, 'spine': self.spine, 'teeth': self.teeth, 'paths': self.paths}


class Exhausted(object):
    kind = 'Exhausted'

    def __init__(self, budget, best):
        self.budget = budget
        self.best = best

    def __repr__(self):
        return 'Exhausted(depth %s, best %d)' % (self.budget, self.best)

    def to_document(self):
        return {'kind': self.kind, 'budget': self.budget, 'best': self.best}


def _least(vertices):
    return min(vertices, key=vertex_key)


def bfs_spine(graph, root):
    """Root to the deepest vertex of the BFS tree, the canonically least among the deepest."""
    g = graph.to_networkx()
    depth = nx.single_source_shortest_path_length(g, root)
    far = max(depth.values())
    target = _least(v for v, d in depth.items() if d == far)
    parents = dict(nx.bfs_predecessors(g, root, sort_neighbors=sort_vertices))
    path = [target]
    while path[-1] != root:
        path.append(parents[path[-1]])
    return path[::-1]


def greedy_path(graph, start, allowed=None):
    """Extends a path from start, always to the least unvisited allowed neighbor."""
    path = [start]
    seen = set(path)
    while True:
        nxt = [u for u in graph.neighbors(path[-1]) if u not in seen and (allowed is None or u in allowed)]
        if not nxt:
            return path
        path.append(nxt[0])
        seen.add(nxt[0])


def _split(graph, blocked, targets):
    """Node-split network: unit capacity through every vertex outside `blocked`, unit capacity into the sink."""
    d = nx.DiGraph()
    for v in graph.vertices:
        if v in blocked:
            continue
        d.add_edge(('in', v), ('out', v), capacity=1)
        if v in targets:
            d.add_edge(('out', v), SINK, capacity=1)
    for u, v in graph.edges:
        for a, b in ((u, v), (v, u)):
            if b in blocked:
                continue
            d.add_edge(('out', a), ('in', b), capacity=1)
    return d


def _paths(flow, starts):
    """Decomposes a unit flow into vertex paths, one per start node carrying flow."""
    result = []
    for start in starts:
        node = start
        path = [start[1]]
        while node != SINK:
            nxt = sorted((b for b, f in flow[node].items() if f > 0), key=repr)
            if not nxt:
                break
            flow[node][nxt[0]] -= 1
            node = nxt[0]
            if node != SINK and node[0] == 'in':
                path.append(node[1])
        else:
            result.append(path)
    return result


def comb_on_spine(graph, spine, D):
    """Teeth on the spine itself first, then the most disjoint paths from the remaining spine vertices to D."""
    spine_set = set(spine)
    trivial = [v for v in spine if v in D]
    free = [v for v in spine if v not in D]
    d = _split(graph, spine_set, set(D) - spine_set)
    for v in free:
        d.add_edge(SOURCE, ('out', v), capacity=1)
    paths = [[v] for v in trivial]
    if free and SINK in d:
        _, flow = nx.maximum_flow(d, SOURCE, SINK)
        starts = [('out', v) for v in free if flow[SOURCE].get(('out', v), 0) > 0]
        paths.extend(_paths(flow, starts))
    return paths


def star_at(graph, center, D):
    d = _split(graph, set([center]), set(D) - set([center]))
    for u in graph.neighbors(center):
        d.add_edge(SOURCE, ('in', u), capacity=1)
    if SINK not in d or SOURCE not in d:
        return []
    _, flow = nx.maximum_flow(d, SOURCE, SINK)
    starts = [b for b, f in sorted(flow[SOURCE].items(), key=lambda x: repr(x[0])) if f > 0]
    return [[center] + p for p in _paths(flow, starts)]


def star_or_comb(t, D, k):
    """
    Looks for a comb with k teeth in D (spines tried: deepest BFS branch from the least target, a greedy path
    through the targets, a greedy long path), then for a star with k tips in D.

    :param t: Truncation
    :param D: target vertices
    :param k: requested number of teeth or tips
    :return: Star, Comb or Exhausted
    """
    graph = t.graph
    targets = sort_vertices(set(v for v in D if v in graph))
    if len(targets) < k:
        raise TargetTooSmall('Only %d of the target vertices lie in the truncation, %d requested' % (len(targets), k))
    comps = sorted(graph.components(), key=lambda c: (-len(set(c) & set(targets)), vertex_key(c[0])))
    sub = graph.induced(comps[0])
    D = set(targets) & set(comps[0])
    best = 0
    if len(D) >= k:
        root = _least(D)
        spines = [bfs_spine(sub, root), greedy_path(sub, root, D), greedy_path(sub, _least(sub.vertices))]
        for spine in spines:
            paths = comb_on_spine(sub, spine, D)
            best = max(best, len(paths))
            if len(paths) >= k:
                paths = sorted(paths, key=lambda p: (len(p), vertex_key(p[0])))[:k]
                comb = Comb(spine, [p[-1] for p in paths], paths)
                assert comb.verify(graph, D)
                logging.info('Comb with %d teeth on a spine of %d at depth %s' % (k, len(spine), t.depth))
                return comb
        for center in sorted(sub.vertices, key=lambda v: (-sub.degree(v), vertex_key(v))):
            if sub.degree(center) < k:
                break
            paths = star_at(sub, center, D)
            best = max(best, len(paths))
            if len(paths) >= k:
                paths = sorted(paths, key=lambda p: (len(p), vertex_key(p[-1])))[:k]
                star = Star(center, [p[-1] for p in paths], paths)
                assert star.verify(graph, D)
                logging.info('Star with %d tips at %s, depth %s' % (k, center, t.depth))
                return star
    logging.info('No star or comb with %d targets at depth %s (best %d)' % (k, t.depth, best))
    return Exhausted(t.depth, best)


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    from endspace.catalog import load
    t = load('double_ray_dominator').truncate(12)
    print(star_or_comb(t, ['g:r1:%d' % i for i in range(12)], 6).to_document())
    print(star_or_comb(load('infinite_star').truncate(8), load('infinite_star').truncate(8).graph.vertices, 5))
