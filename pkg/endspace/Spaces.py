# -*- coding: utf-8 -*-
from __future__ import print_function
import itertools
import logging
import sys

import networkx as nx
from networkx.utils import UnionFind

from endspace.Cuts import engine, USpec
from endspace.FiniteGraph import UnresolvedRef, vertex_key, sort_vertices
from endspace.Separation import Separator, Separation, cut_skeleton, VERTEX_SET, EDGE_SET
from endspace.Skeleton import SINGLETON, OMEGA_FAMILY

END = 'End'
EDGE_END = 'EdgeEnd'
TIMID_END = 'TimidEnd'
U_END = 'UEnd'
EDGE_DIRECTION = 'EdgeDirection'
U_DIRECTION = 'UDirection'
VERTEX_DIRECTION = 'VertexDirection'

FROM_END = 'FromEnd'
RAYLESS_HUB = 'RaylessHub'


class ResolutionOverflow(Exception):
    pass


class IncoherentChain(Exception):
    pass


class PartialBijection(Exception):
    pass


def point_key(id):
    if id.startswith('f:') or id.startswith('g:'):
        rank = 0
    elif id.startswith('hub:'):
        rank = 1
    elif id.startswith('k:'):
        rank = 2
    else:
        rank = 3
    return rank, vertex_key(id)


class Point(object):
    """
    A point of an end or direction space. Singleton points are one end (or direction); an OmegaFamily point
    stands for the omega many pairwise distinct points hidden in one rest node.
    """

    def __init__(self, id, shape, node, atoms, source=FROM_END, nested=False):
        self.id = id
        self.shape = shape
        self.node = node
        self.atoms = sorted(atoms, key=point_key)
        self.source = source
        self.nested = nested

    @property
    def family(self):
        return self.shape == OMEGA_FAMILY

    def __repr__(self):
        return 'Point(%s, %s)' % (self.id, self.shape)

    def to_document(self):
        doc = {'id': self.id, 'shape': self.shape, 'seed': self.atoms, 'source': self.source, 'node': self.node}
        if self.nested:
            doc['nested'] = True
        return doc


class Partition(object):
    """The blocks of G minus F restricted to the points of a summary."""

    def __init__(self, F, point_block, shattered, blocks):
        self.F = F
        self.point_block = point_block
        self.shattered = frozenset(shattered)
        self.blocks = blocks

    def block_of(self, pid):
        return self.point_block.get(pid)

    def same_block(self, x, y):
        bx = self.point_block.get(x)
        return bx is not None and bx == self.point_block.get(y)

    def block_nodes(self, pid):
        b = self.point_block.get(pid)
        return self.blocks.get(b, frozenset()) if b is not None else frozenset()

    def points_in(self, label):
        return sorted((pid for pid, b in self.point_block.items() if b == label), key=point_key)

    def tokens(self, points):
        """Token sets of the distinct blocks: point ids, 'S' for a whole family and 'S@' for one hidden member."""
        result = {}
        for pt in points:
            if pt.id in self.shattered:
                result[('@', pt.id)] = frozenset([pt.id + '@'])
                continue
            b = self.point_block.get(pt.id)
            if b is not None:
                result.setdefault(b, set()).add(pt.id)
        return [frozenset(t) for t in result.values()]

    def to_document(self):
        doc = {}
        for label in sorted(self.blocks, key=vertex_key):
            members = self.points_in(label)
            if members:
                doc[label] = members
        return {'separator': self.F.key(), 'blocks': doc, 'shattered': sorted(self.shattered, key=point_key)}


class SpaceSummary(object):
    """
    Finite summary of one end or direction space: its points plus, lazily, the partition each separator of the
    resolution induces on them.
    """

    def __init__(self, p, space, kind, skeleton, points, elements, separators, capped, atom_owner):
        self.p = p
        self.space = space
        self.kind = kind
        self.skeleton = skeleton
        self.points = sorted(points, key=lambda pt: point_key(pt.id))
        self.elements = list(elements)
        self.separators = list(separators)
        self.capped = capped
        self.atom_owner = atom_owner
        self._partitions = {}
        self._point_by_id = dict((pt.id, pt) for pt in self.points)
        self._token_blocks = None

    def __repr__(self):
        return 'SpaceSummary(%s of %s, %d points, %d separators)' % (self.space, self.p.name, len(self.points),
                                                                     len(self.separators))

    def __len__(self):
        return len(self.points)

    def ids(self):
        return [pt.id for pt in self.points]

    def point(self, id):
        if id not in self._point_by_id:
            raise UnresolvedRef('No point %s in the %s summary of %s' % (id, self.space, self.p.name))
        return self._point_by_id[id]

    def owner(self, atom):
        return self.atom_owner.get(atom)

    def singletons(self):
        return [pt for pt in self.points if not pt.family]

    def families(self):
        return [pt for pt in self.points if pt.family]

    def partition(self, F):
        key = F.key()
        if key not in self._partitions:
            self._partitions[key] = self._partition(F)
        return self._partitions[key]

    def _partition(self, F):
        s = self.skeleton
        h = cut_skeleton(s, F)
        comp_of = {}
        blocks = {}
        for comp in nx.connected_components(h):
            concrete = sort_vertices(n for n in comp if s.is_concrete(n))
            label = concrete[0] if concrete else s.representative(sort_vertices(comp)[0])
            blocks[label] = frozenset(comp)
            for n in comp:
                comp_of[n] = label
        point_block = {}
        shattered = []
        for pt in self.points:
            node = pt.node
            if node not in comp_of:
                survivors = sort_vertices(n for n in s.graph.neighbors(node) if n in comp_of)
                if not survivors:
                    continue
                node = survivors[0]
            if pt.family and len(blocks[comp_of[node]]) == 1 and s.attr(node, 'shatter'):
                shattered.append(pt.id)
                continue
            point_block[pt.id] = comp_of[node]
        return Partition(F, point_block, shattered, blocks)

    def partitions(self):
        for F in self.separators:
            yield self.partition(F)

    def accumulation(self):
        """:return: (x, S) pairs: point x lies in the block of family S under every separator"""
        result = []
        for S in self.families():
            for x in self.points:
                if x.id == S.id:
                    continue
                if all(P.same_block(x.id, S.id) for P in self.partitions()):
                    result.append((x.id, S.id))
        return result

    def accumulation_points(self, family_id):
        return [x for x, S in self.accumulation() if S == family_id]

    def is_compact(self):
        acc = set(S for _, S in self.accumulation())
        return all(S.id in acc for S in self.families())

    def isolates_members(self, pid):
        """True when one hidden member of family pid is cut off from the rest by finitely many elements."""
        pt = self._point_by_id.get(pid)
        return pt is not None and pt.family and bool(self.skeleton.attr(pt.node, 'shatter'))

    def token_blocks(self):
        if self._token_blocks is None:
            distinct = set()
            for P in self.partitions():
                distinct.update(P.tokens(self.points))
            self._token_blocks = sorted(distinct, key=lambda t: (len(t), sorted(t)))
        return self._token_blocks

    def coherence_failures(self):
        """Pairs F subset F' of the resolution where the F'-partition fails to refine the F-partition."""
        failures = []
        by_key = dict((F.key(), F) for F in self.separators)
        for F in self.separators:
            for x in self.elements:
                if x in F.elements:
                    continue
                larger = Separator(F.kind, F.elements + [x])
                if larger.key() not in by_key:
                    continue
                P, Q = self.partition(F), self.partition(larger)
                for a, b in itertools.combinations(self.ids(), 2):
                    if Q.same_block(a, b) and not P.same_block(a, b):
                        failures.append((F.key(), larger.key(), a, b))
                for a in P.shattered:
                    if a not in Q.shattered:
                        failures.append((F.key(), larger.key(), a, a))
        return failures

    def _family_holding(self, pt, family_ids):
        held = set()
        for atom in pt.atoms:
            if '#' not in atom:
                return None
            seed, label = atom.split('#', 1)
            copy = '%s#%s.*' % (seed, label.split('.')[0]) if '.' in label else None
            if copy in family_ids:
                held.add(copy)
            elif '%s#*' % seed in family_ids:
                held.add('%s#*' % seed)
            else:
                return None
        return held.pop() if len(held) == 1 else None

    def reported_points(self):
        """
        (point, explicit members) pairs: an explicit member of an uncollapsed family is listed inside the family
        entry rather than as a point of its own.
        """
        family_ids = set(pt.id for pt in self.families())
        folded = {}
        for pt in self.singletons():
            owner = self._family_holding(pt, family_ids)
            if owner is not None:
                folded.setdefault(owner, []).append(pt.id)
        members = set(x for ids in folded.values() for x in ids)
        return [(pt, folded.get(pt.id, [])) for pt in self.points if pt.id not in members]

    def to_document(self, with_partitions=True):
        points = []
        for pt, explicit in self.reported_points():
            entry = pt.to_document()
            if explicit:
                entry['explicit'] = explicit
            points.append(entry)
        doc = {'space': self.space, 'presentation': self.p.name, 'kind': self.kind,
               'points': points,
               'resolution': {'elements': self.elements, 'separators': len(self.separators), 'capped': self.capped},
               'accumulation': [list(a) for a in self.accumulation()],
               'compact': self.is_compact()}
        if with_partitions:
            doc['partitions'] = dict((P.F.key(), P.to_document()) for P in self.partitions())
        return doc


class Spaces(object):
    """Builds the end and direction summaries of one presentation."""
    Full_subset_budget = 12
    Capped_subset_size = 3

    def __init__(self, p, full_subset_budget=None, capped_subset_size=None, exact=False):
        self.p = p
        self.full_subset_budget = full_subset_budget if full_subset_budget is not None else self.Full_subset_budget
        self.capped_subset_size = capped_subset_size if capped_subset_size is not None else self.Capped_subset_size
        self.exact = exact

    def resolution(self, kind, elements):
        elements = sort_vertices(elements)
        if len(elements) <= self.full_subset_budget:
            sizes = range(len(elements) + 1)
            capped = False
        elif self.exact:
            raise ResolutionOverflow('%d separator elements in %s exceed the full subset budget %d' %
                                     (len(elements), self.p.name, self.full_subset_budget))
        else:
            logging.warning('Resolution of %s capped at separators of size %d (%d elements)' %
                            (self.p.name, self.capped_subset_size, len(elements)))
            sizes = range(self.capped_subset_size + 1)
            capped = True
        separators = [Separator(kind, c) for k in sizes for c in itertools.combinations(elements, k)]
        return separators, capped

    def _summary(self, space, kind, removable=None, hubs=(), hub_families=()):
        s = self.p.skeleton()
        h = s.graph.copy()
        if kind == EDGE_SET:
            h.remove_edges_from([(u, v) for u, v, d in s.graph.edges(data=True) if not d.get('omega')])
            elements = s.unit_arcs()
        else:
            elements = [n for n in s.concrete_nodes() if removable(n)]
            h.remove_nodes_from(elements)
        comp_of = {}
        for i, comp in enumerate(nx.connected_components(h)):
            for n in comp:
                comp_of[n] = i
        node_of = {}
        hub_atoms = set()
        for seed in s.seeds:
            if seed.shape == SINGLETON:
                node_of[seed.id] = seed.node
            else:
                for label, node in seed.members:
                    node_of['%s#%s' % (seed.id, label)] = node
        for v in hubs:
            node_of['hub:%s' % v] = v
            hub_atoms.add('hub:%s' % v)
        for seed in hub_families:
            for label, node in seed.members:
                node_of['%s#%s' % (seed.id, label)] = node
                hub_atoms.add('%s#%s' % (seed.id, label))
        uf = UnionFind(node_of.keys())
        by_comp = {}
        for atom, node in node_of.items():
            by_comp.setdefault(comp_of.get(node, ('removed', node)), []).append(atom)
        for atoms in by_comp.values():
            uf.union(*atoms)
        hidden = []
        for seed in [x for x in s.seeds if x.shape == OMEGA_FAMILY] + list(hub_families):
            hidden.extend(self._collapse(seed, uf, node_of))
        points = []
        atom_owner = {}
        for group in uf.to_sets():
            atoms = sorted(group, key=point_key)
            source = RAYLESS_HUB if all(a in hub_atoms for a in atoms) else FROM_END
            pt = Point(atoms[0], SINGLETON, node_of[atoms[0]], atoms, source)
            points.append(pt)
            for a in atoms:
                atom_owner[a] = pt.id
        for atom, node, nested, is_hub in hidden:
            points.append(Point(atom, OMEGA_FAMILY, node, [atom], RAYLESS_HUB if is_hub else FROM_END, nested))
            atom_owner[atom] = atom
        separators, capped = self.resolution(kind, elements)
        summary = SpaceSummary(self.p, space, kind, s, points, elements, separators, capped, atom_owner)
        logging.info('%s summary of %s: %d points, %d separators' % (space, self.p.name, len(summary.points),
                                                                     len(separators)))
        return summary

    def _collapse(self, seed, uf, node_of):
        """
        Decides an omega-indexed seed by its representative members: members 0 and 1 equivalent means every
        member is, and the rest node joins their class. Otherwise the hidden members form a family point.
        """
        is_hub = seed.id.startswith('hub:')
        rests = dict(seed.rests)
        labels = [label for label, _ in seed.members]
        atom = lambda label: '%s#%s' % (seed.id, label)
        same = lambda a, b: atom(a) in node_of and atom(b) in node_of and uf[atom(a)] == uf[atom(b)]
        hidden = []
        if all('.' not in label for label in labels):
            if len(labels) >= 2 and same(labels[0], labels[1]):
                self._join(uf, node_of, atom('*'), rests['*'], atom(labels[0]))
            else:
                hidden.append((atom('*'), rests['*'], False, is_hub))
            return hidden
        copies = sorted(set(label.split('.')[0] for label in labels), key=int)
        if same('0.0', '1.0'):
            for label, node in seed.rests:
                self._join(uf, node_of, atom(label), node, atom('0.0'))
            return hidden
        copy_collapsed = {}
        for j in copies:
            copy_collapsed[j] = same('%s.0' % j, '%s.1' % j)
            rest = rests.get('%s.*' % j)
            if rest is None:
                continue
            if copy_collapsed[j]:
                self._join(uf, node_of, atom('%s.*' % j), rest, atom('%s.0' % j))
            else:
                hidden.append((atom('%s.*' % j), rest, False, is_hub))
        hidden.append((atom('*'), rests['*'], not copy_collapsed.get('0', True), is_hub))
        return hidden

    def _join(self, uf, node_of, hidden_atom, node, into):
        node_of[hidden_atom] = node
        uf.union(hidden_atom, into)

    def edge_ends(self):
        return self._summary(EDGE_END, EDGE_SET)

    def ends(self):
        return self._summary(END, VERTEX_SET, lambda v: True)

    def vertex_directions(self):
        return self._summary(VERTEX_DIRECTION, VERTEX_SET, lambda v: True)

    def timid_ends(self):
        e = engine(self.p)
        return self._summary(TIMID_END, VERTEX_SET, e.timid)

    def u_ends(self, U):
        U.validate(self.p)
        return self._summary(U_END, VERTEX_SET, lambda v: U.contains(self.p, v))

    def edge_directions(self):
        s = self.p.skeleton()
        e = engine(self.p)
        hubs = [v for v in s.concrete_nodes() if s.infinite_degree(v) and e.timid(v)]
        hub_families = [seed for seed in s.hub_seeds if e.timid(seed.members[0][1])]
        return self._summary(EDGE_DIRECTION, EDGE_SET, hubs=hubs, hub_families=hub_families)

    def u_directions(self, U):
        U.validate(self.p)
        s = self.p.skeleton()
        b = engine(self.p).boundary_tU(U)
        hubs = [v for v in b.explicit if not U.contains(self.p, v) and s.infinite_degree(v)]
        hub_families = [seed for seed in s.hub_seeds if seed.owner in b.families and
                        not U.contains(self.p, seed.members[0][1])]
        return self._summary(U_DIRECTION, VERTEX_SET, lambda v: U.contains(self.p, v), hubs, hub_families)


def enumerate_edge_ends(p, **kwargs):
    return Spaces(p, **kwargs).edge_ends()


def enumerate_ends(p, **kwargs):
    return Spaces(p, **kwargs).ends()


def enumerate_timid_ends(p, **kwargs):
    return Spaces(p, **kwargs).timid_ends()


def enumerate_u_ends(p, U, **kwargs):
    return Spaces(p, **kwargs).u_ends(U)


def enumerate_edge_directions(p, **kwargs):
    return Spaces(p, **kwargs).edge_directions()


def enumerate_u_directions(p, U, **kwargs):
    return Spaces(p, **kwargs).u_directions(U)


def enumerate_vertex_directions(p, **kwargs):
    return Spaces(p, **kwargs).vertex_directions()


def iota(directions, e):
    """The edge direction of edge end e: the direction summary point carrying the same seed."""
    if e.source != FROM_END:
        raise UnresolvedRef('%s is not an edge end' % e.id)
    owner = directions.owner(e.atoms[0])
    if owner is None:
        raise UnresolvedRef('Edge end %s has no direction in %s' % (e.id, directions.p.name))
    return directions.point(owner)


def direction_thread(p, d, chain):
    """
    The components of G minus F_k containing direction d, for an increasing chain of edge separators.

    :return: list of ComponentRecord, one per chain element
    """
    for a, b in zip(chain, chain[1:]):
        if not a.issubset(b):
            raise IncoherentChain('Separator chain is not increasing at %s -> %s' % (a.key(), b.key()))
    if not chain:
        return []
    focus = sort_vertices(set(v for F in chain for v in F.vertices()))
    sep = Separation(p)
    thread = []
    for F in chain:
        records = sep.components(F, infinite_only=True, focus=focus)
        found = [r for r in records if d.node in r.nodes]
        if not found:
            raise IncoherentChain('Direction %s has no component in G minus %s' % (d.id, F.key()))
        thread.append(found[0])
    for prev, rec in zip(thread, thread[1:]):
        if not rec.nodes <= prev.nodes:
            raise IncoherentChain('Component %s is not nested in %s' % (rec.representative, prev.representative))
    return thread


class CorrespondenceReport(object):
    def __init__(self, mode, checked, failures):
        self.mode = mode
        self.checked = checked
        self.failures = failures

    @property
    def passed(self):
        return not self.failures

    def __repr__(self):
        return 'CorrespondenceReport(%s, %s, %d failures)' % (self.mode, 'pass' if self.passed else 'fail',
                                                             len(self.failures))

    def to_document(self):
        return {'mode': self.mode, 'passed': self.passed, 'checked': self.checked,
                'failures': [list(f) for f in self.failures[:50]], 'failure_count': len(self.failures)}


def _check_bijection(s1, s2, m):
    missing = [x for x in s1.ids() if x not in m]
    if missing:
        raise PartialBijection('Point map is not total, missing %s' % missing)
    images = [m[x] for x in s1.ids()]
    if len(set(images)) != len(images):
        raise PartialBijection('Point map is not injective')
    unknown = [y for y in images if y not in s2.ids()]
    if unknown:
        raise PartialBijection('Point map leaves the target space: %s' % unknown)
    missed = [y for y in s2.ids() if y not in set(images)]
    if missed:
        raise PartialBijection('Point map is not surjective, missing %s' % missed)


def _translate(token, m):
    if token.endswith('@'):
        return m[token[:-1]] + '@'
    return m[token]


def _covered(block, image):
    for t in block:
        if t.endswith('@'):
            if t not in image and t[:-1] not in image:
                return False
        elif t not in image:
            return False
    return True


def open_failures(summary, image):
    """Tokens of `image` having no basic block of `summary` inside `image`."""
    failures = []
    for y in sorted(image):
        wanted = y if y.endswith('@') else None
        fam = summary._point_by_id.get(y)
        if wanted is None and fam is not None and fam.family:
            wanted = y + '@'
        if y.endswith('@') and summary.isolates_members(y[:-1]):
            continue
        ok = False
        for block in summary.token_blocks():
            contains = (y in block) or (wanted is not None and (wanted in block or wanted[:-1] in block))
            if contains and _covered(block, image):
                ok = True
                break
        if not ok:
            failures.append(y)
    return failures


def correspondence_check(s1, s2, m, sep_map=None, vertex_map=None):
    """
    Checks that the point bijection m is a homeomorphism at resolution. With sep_map every separator F of s1 is
    transported to sep_map(F) and the partitions compared; without, every basic block of either side must be open
    on the other side.
    """
    _check_bijection(s1, s2, m)
    failures = []
    for pt in s1.points:
        if pt.family != s2.point(m[pt.id]).family:
            failures.append(('shape', pt.id, m[pt.id]))
    if sep_map is None:
        inverse = dict((y, x) for x, y in m.items())
        for a, b, mapping in ((s1, s2, m), (s2, s1, inverse)):
            for block in a.token_blocks():
                image = set(_translate(t, mapping) for t in block)
                for y in open_failures(b, image):
                    failures.append(('open', a.space, sorted(block), y))
        checked = len(s1.token_blocks()) + len(s2.token_blocks())
        report = CorrespondenceReport('open', checked, failures)
    else:
        ids = s1.ids()
        for F in s1.separators:
            P1, P2 = s1.partition(F), s2.partition(sep_map(F))
            for x in ids:
                if (x in P1.shattered) != (m[x] in P2.shattered):
                    failures.append((F.key(), x, 'shattered'))
            for x, y in itertools.combinations(ids, 2):
                if P1.same_block(x, y) != P2.same_block(m[x], m[y]):
                    failures.append((F.key(), x, y))
            if vertex_map is not None:
                for x in ids:
                    label = P1.block_of(x)
                    target = vertex_map(label) if label is not None and s1.skeleton.is_concrete(label) else None
                    if target is not None and target not in P2.block_nodes(m[x]):
                        failures.append((F.key(), x, 'label %s' % label))
        report = CorrespondenceReport('partition', len(s1.separators), failures)
    if report.passed:
        logging.info('Correspondence %s -> %s (%s mode) holds at resolution' % (s1.space, s2.space, report.mode))
    else:
        logging.warning('Correspondence %s -> %s (%s mode) failed: %s' % (s1.space, s2.space, report.mode,
                                                                          report.failures[:3]))
    return report


def identity_map(summary):
    return dict((x, x) for x in summary.ids())


class RhoReport(object):
    def __init__(self, U, misses, boundary_outside):
        self.U = U
        self.misses = misses
        self.boundary_outside = boundary_outside

    @property
    def surjective(self):
        return not self.misses

    @property
    def consistent(self):
        return bool(self.misses) == bool(self.boundary_outside)

    def to_document(self):
        return {'U': self.U.describe(), 'result': 'Surjective' if self.surjective else 'Misses',
                'misses': self.misses, 'boundary_outside_U': self.boundary_outside, 'consistent': self.consistent}


def rho_surjectivity_check(p, U, **kwargs):
    U.validate(p)
    directions = Spaces(p, **kwargs).u_directions(U)
    misses = [pt.id for pt in directions.points if pt.source == RAYLESS_HUB]
    outside = engine(p).boundary_tU(U).outside(p, U)
    report = RhoReport(U, misses, outside)
    if not report.consistent:
        logging.warning('Rayless U-directions %s of %s disagree with the boundary outside U %s' %
                        (misses, p.name, outside))
    return report


class OpennessReport(object):
    def __init__(self, end, F, image, failures):
        self.end = end
        self.F = F
        self.image = sorted(image)
        self.failures = failures

    @property
    def open(self):
        return not self.failures

    def to_document(self):
        return {'end': self.end, 'separator': self.F.key(), 'image': self.image, 'open': self.open,
                'not_interior': self.failures}


def openness_probe(p, U, e, F, **kwargs):
    """
    Pushes the basic open set of end e in the end space forward to the U-end space and tests whether the image
    is open there at resolution.
    """
    spaces = Spaces(p, **kwargs)
    ends = spaces.ends()
    target = spaces.u_ends(U)
    point = ends.point(e)
    P = ends.partition(F)
    label = P.block_of(point.id)
    if label is None:
        raise UnresolvedRef('End %s is not in a component of G minus %s' % (e, F.key()))
    image = set()
    for pid in P.points_in(label):
        pt = ends.point(pid)
        owner = target.owner(pt.atoms[0])
        if owner is None:
            raise UnresolvedRef('End %s has no image in the U-end space' % pid)
        image.add(owner)
    failures = open_failures(target, image)
    logging.info('Image of the basic set of %s at %s in %s: %s (%s)' %
                 (e, F.key(), target.space, sorted(image), 'open' if not failures else 'not open'))
    return OpennessReport(e, F, image, failures)


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    from endspace.catalog import load
    p = load('star_of_rays')
    d = enumerate_edge_directions(p)
    print(d.to_document(with_partitions=False))
    print(rho_surjectivity_check(p, USpec.parse('all-c:c')).to_document())
