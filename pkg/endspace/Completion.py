# -*- coding: utf-8 -*-
from __future__ import print_function
import logging
import random
import sys

from endspace.FiniteGraph import edge_name, split_edge, sort_vertices
from endspace.Presentation import STAR_OF_RAYS, parse_presentation
from endspace.Separation import Separator, EDGE_SET
from endspace.Spaces import Spaces, RAYLESS_HUB, point_key, correspondence_check
from endspace.Transforms import TransformResult, require_declarative


class UnpresentableThreading(Exception):
    pass


STAR_GADGET = 'star'
CHAIN = 'chain'
THREADS = 'threads'


class Thread(object):
    """One new ray of the completion: a threaded star gadget, a chained family or threaded star-pattern copies."""

    def __init__(self, kind, owner, hub, local=None):
        self.kind = kind
        self.owner = owner
        self.hub = hub
        self.local = local

    def __eq__(self, other):
        return isinstance(other, Thread) and (self.kind, self.owner) == (other.kind, other.owner)

    def __hash__(self):
        return hash((self.kind, self.owner))

    def __repr__(self):
        return 'Thread(%s %s at %s)' % (self.kind, self.owner, self.hub)

    def target(self, label=None):
        """Seed atom of the new ray in the completed graph."""
        if self.kind == STAR_GADGET:
            return 'g:%s:chain' % self.owner
        if self.kind == CHAIN:
            return 'f:%s:chain' % self.owner
        return 'f:%s:threads#%s' % (self.owner, label)

    def to_document(self):
        doc = {'kind': self.kind, 'owner': self.owner, 'hub': self.hub}
        if self.local is not None:
            doc['local'] = self.local
        return doc


def _thread_at(p, v):
    """The thread for hub vertex v, or None when nothing at v can carry a new ray."""
    for gid in p.attached_at.get(v, []):
        if p.gadget_by_id[gid].kind == STAR_OF_RAYS:
            return Thread(STAR_GADGET, gid, v)
    for fid, local in sorted(p.fixed_hosted.get(v, [])):
        if not p.family_by_id[fid].chained:
            return Thread(CHAIN, fid, v, local)
    ref = p.resolve(v)
    if ref.kind == 'family' and ref.local == 'hub' and p.family_by_id[ref.owner].pattern.kind == STAR_OF_RAYS:
        return Thread(THREADS, ref.owner, v)
    return None


def _hub_atom_thread(p, atom):
    """:return: (thread, label) for a hub atom, label naming the copy for star-pattern families"""
    body = atom[len('hub:'):]
    if '#' in body:
        seed, label = body.split('#', 1)
        fid = seed[len('f:'):]
        if fid in p.family_by_id and p.family_by_id[fid].pattern.kind == STAR_OF_RAYS:
            return Thread(THREADS, fid, p.family_by_id[fid].vertex(0, 'hub')), label
        return None, None
    thread = _thread_at(p, body)
    if thread is None:
        return None, None
    label = str(p.resolve(body).copy) if thread.kind == THREADS else None
    return thread, label


def rayless_hub_classes(p, **kwargs):
    directions = Spaces(p, **kwargs).edge_directions()
    return directions, [pt for pt in directions.points if pt.source == RAYLESS_HUB]


def plan_threads(p, **kwargs):
    """
    Chooses one thread per rayless hub class, at its least hub that admits one.

    :return: (edge direction summary, list of Thread, dict point id -> (thread, label))
    """
    directions, hubs = rayless_hub_classes(p, **kwargs)
    threads = []
    choice = {}
    for pt in hubs:
        for atom in sorted(pt.atoms, key=point_key):
            thread, label = _hub_atom_thread(p, atom)
            if thread is not None:
                break
        else:
            raise UnpresentableThreading('Rayless direction %s of %s has no hub whose neighborhood can be threaded'
                                         % (pt.id, p.name))
        if thread not in threads:
            threads.append(thread)
        choice[pt.id] = (threads[threads.index(thread)], label)
    return directions, threads, choice


def _apply(doc, threads):
    gadgets = dict((g['id'], g) for g in doc['gadgets'])
    families = dict((f['id'], f) for f in doc['families'])
    for t in threads:
        if t.kind == STAR_GADGET:
            gadgets[t.owner]['threaded'] = True
        elif t.kind == CHAIN:
            families[t.owner]['chained'] = True
            families[t.owner]['chain_edge'] = [t.local, t.local]
        else:
            families[t.owner]['threaded'] = True


def flanking_edges(p, threads, v):
    """New thread edges of the completed graph p incident to vertex v; at most two."""
    result = []
    ref = p.resolve(v)
    for t in threads:
        if ref.owner != t.owner:
            continue
        if t.kind == STAR_GADGET and ref.kind == 'gadget' and ref.index[1] == 0:
            g = p.gadget_by_id[t.owner]
            k = ref.index[0]
            if k > 0:
                result.append(edge_name(g.vertex(k - 1, 0), v))
            result.append(edge_name(v, g.vertex(k + 1, 0)))
        elif t.kind == CHAIN and ref.kind == 'family':
            f = p.family_by_id[t.owner]
            a, b = f.chain_edge
            j = ref.copy
            if ref.local == b and j > 0:
                result.append(edge_name(f.vertex(j - 1, a), v))
            if ref.local == a:
                result.append(edge_name(v, f.vertex(j + 1, b)))
        elif t.kind == THREADS and ref.kind == 'family' and ref.local.endswith('.0'):
            f = p.family_by_id[t.owner]
            k = int(ref.local.split('.')[0])
            if k > 0:
                result.append(edge_name(f.vertex(ref.copy, '%d.0' % (k - 1)), v))
            result.append(edge_name(v, f.vertex(ref.copy, '%d.0' % (k + 1))))
    return sort_vertices(set(result))


def completed_separator(p, threads):
    """F -> F~: F plus the thread edges flanking every end of an F-edge lying on a new ray."""
    s = p.skeleton()

    def sep_map(F):
        if F.kind != EDGE_SET:
            raise ValueError('Completion separators are transported from edge separators, got %s' % F.key())
        extra = []
        for e in F.elements:
            for v in split_edge(e):
                for f in flanking_edges(p, threads, v):
                    if f in s.edge_arcs:
                        extra.append(f)
                    else:
                        logging.info('Flanking edge %s of %s lies inside a region, not cut' % (f, p.name))
        result = Separator(EDGE_SET, F.elements + extra)
        assert len(result) <= 4 * len(F), 'Completed separator %s exceeds 4|F| for %s' % (result.key(), F.key())
        return result
    return sep_map


def completion(p, **kwargs):
    """
    Adds one new ray through the infinite neighborhood of every rayless-direction hub. Point map psi sends every
    ray-induced edge direction to the edge-end of the same ray and every rayless direction to the new ray.
    """
    require_declarative(p, 'completion')
    directions, threads, choice = plan_threads(p, **kwargs)
    if not threads:
        logging.info('%s has no rayless edge directions, completion is the identity' % p.name)
        return TransformResult('completion', p, point_map=dict((x, x) for x in directions.ids()),
                               rules={'point_map': 'identity'}, source=p.name)
    doc = p.to_document()
    _apply(doc, threads)
    doc['name'] = 'completion(%s)' % p.name
    completed = parse_presentation(doc)
    logging.info('Completion of %s threads %s' % (p.name, ', '.join(repr(t) for t in threads)))
    ends = Spaces(completed, **kwargs).edge_ends()
    psi = {}
    for pt in directions.points:
        if pt.id in choice:
            thread, label = choice[pt.id]
            atom = thread.target(label)
        else:
            atom = pt.atoms[0]
        owner = ends.owner(atom)
        if owner is None:
            logging.warning('Direction %s of %s has no edge-end %s in the completion' % (pt.id, p.name, atom))
            continue
        psi[pt.id] = owner
    result = TransformResult('completion', completed, point_map=psi,
                             separator_map=completed_separator(completed, threads),
                             rules={'separator_map': 'F -> F plus the new-ray edges flanking its ends',
                                    'threads': [t.to_document() for t in threads]},
                             source=p.name)
    result.threads = threads
    result.directions = directions
    result.ends = ends
    return result


class CompletionReport(object):
    def __init__(self, name, correspondence, rayless_after, bound_failures, samples):
        self.name = name
        self.correspondence = correspondence
        self.rayless_after = rayless_after
        self.bound_failures = bound_failures
        self.samples = samples

    @property
    def passed(self):
        return self.correspondence.passed and not self.rayless_after and not self.bound_failures

    def to_document(self):
        return {'presentation': self.name, 'passed': self.passed,
                'correspondence': self.correspondence.to_document(),
                'rayless_after': self.rayless_after, 'bound_samples': self.samples,
                'bound_failures': self.bound_failures}


def separator_bound_failures(result, elements, samples=1000, seed=0):
    """Random separators F over `elements`; those whose completed separator exceeds 4|F|."""
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        k = rng.randint(0, min(len(elements), 6))
        F = Separator(EDGE_SET, rng.sample(elements, k))
        try:
            G = result.map_separator(F)
        except AssertionError:
            failures.append(F.key())
            continue
        if len(G) > 4 * len(F):
            failures.append(F.key())
    return failures


def check_completion(p, samples=1000, **kwargs):
    """Edge directions of p against the edge-ends of its completion, the 4|F| bound and the rayless count."""
    result = completion(p, **kwargs)
    if result.output is p:
        directions = Spaces(p, **kwargs).edge_directions()
        ends = Spaces(p, **kwargs).edge_ends()
    else:
        directions, ends = result.directions, result.ends
    report = correspondence_check(directions, ends, result.point_map, sep_map=result.map_separator)
    _, after = rayless_hub_classes(result.output, **kwargs)
    bound = separator_bound_failures(result, p.skeleton().unit_arcs(), samples) if result.output is not p else []
    report = CompletionReport(p.name, report, [pt.id for pt in after], bound, samples)
    if report.passed:
        logging.info('Completion of %s verified' % p.name)
    else:
        logging.warning('Completion of %s failed: %s' % (p.name, report.to_document()))
    return report


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    from endspace.catalog import load
    for name in ('star_of_rays', 'infinite_star', 'twin_hubs'):
        print(check_completion(load(name), samples=50).to_document())
