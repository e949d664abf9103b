# -*- coding: utf-8 -*-
from __future__ import print_function
import itertools
import logging
import sys

from endspace.Cuts import engine, min_edge_cut
from endspace.FiniteGraph import UnresolvedRef, sort_vertices
from endspace.Presentation import Presentation, parse_presentation
from endspace.Separation import Separation, Separator, VERTEX_SET, EDGE_SET
from endspace.Spaces import Spaces, FROM_END, RAYLESS_HUB, correspondence_check, iota
from endspace.Transforms import connect_components, require_declarative


class NotInduced(Exception):
    pass


class Verdict(object):
    """Compact, or a Witness: a finite set of timid vertices leaving infinitely many non-rayless components."""

    def __init__(self, name, witness=None, searched=()):
        self.name = name
        self.witness = witness
        self.searched = list(searched)

    @property
    def compact(self):
        return self.witness is None

    def __repr__(self):
        if self.compact:
            return 'Compact(%s, %d separators searched)' % (self.name, len(self.searched))
        return 'Witness(%s)' % self.witness.key()

    def to_document(self):
        doc = {'presentation': self.name, 'result': 'Compact' if self.compact else 'Witness',
               'searched': [F.key() for F in self.searched]}
        if not self.compact:
            doc['witness'] = self.witness.elements
        return doc


class ClauseReport(object):
    def __init__(self, name, clauses, traces):
        self.name = name
        self.clauses = clauses
        self.traces = traces

    @property
    def agree(self):
        return len(set(self.clauses.values())) == 1

    def to_document(self):
        return {'presentation': self.name, 'clauses': self.clauses, 'agree': self.agree, 'traces': self.traces}


class DenseReport(object):
    def __init__(self, name, conditions):
        self.name = name
        self.conditions = conditions

    @property
    def passed(self):
        return all(not witnesses for witnesses in self.conditions.values())

    def to_document(self):
        return {'presentation': self.name, 'passed': self.passed,
                'conditions': dict((k, {'holds': not v, 'witnesses': v}) for k, v in self.conditions.items())}


class IotaReport(object):
    def __init__(self, name, compact, bijective, closed, candidate, failures):
        self.name = name
        self.compact = compact
        self.bijective = bijective
        self.closed = closed
        self.candidate = candidate
        self.failures = failures

    @property
    def consistent(self):
        if self.compact:
            return self.bijective and not self.failures
        return not (self.bijective and self.closed)

    def to_document(self):
        return {'presentation': self.name, 'compact': self.compact, 'iota_bijective': self.bijective,
                'iota_closed': self.closed, 'candidate': self.candidate, 'consistent': self.consistent,
                'failures': [list(f) for f in self.failures]}


class Compactness(object):
    """Compactness of the edge-end space, decided by the timid criterion and cross-checked by the direction space."""
    Search_size = 2

    def __init__(self, p, search_size=None, **space_args):
        self.p = p
        self.search_size = search_size if search_size is not None else self.Search_size
        self.space_args = space_args

    def candidates(self, p=None):
        """Timid explicit vertices of infinite degree: the only removals that can shatter an omega-family."""
        p = p or self.p
        s = p.skeleton()
        e = engine(p)
        return [v for v in s.concrete_nodes() if s.infinite_degree(v) and e.timid(v)]

    def timid_criterion(self, p=None):
        p = p or self.p
        sep = Separation(p)
        searched = []
        pool = self.candidates(p)
        for k in range(min(self.search_size, len(pool)) + 1):
            for F in itertools.combinations(pool, k):
                F = Separator(VERTEX_SET, F)
                searched.append(F)
                for rec in sep.components(F, focus=F.vertices()):
                    if rec.rays and rec.multiplicity != 1:
                        logging.info('%s: removing %s leaves omega non-rayless components at %s' %
                                     (p.name, F.key(), rec.representative))
                        return Verdict(p.name, F, searched)
        logging.info('%s: no timid separator among %d searched leaves infinitely many non-rayless components' %
                     (p.name, len(searched)))
        return Verdict(p.name, None, searched)

    def hull(self):
        """The clauses speak about connected graphs; disconnected presentations are joined through an apex."""
        if not isinstance(self.p, Presentation):
            return self.p
        return connect_components(self.p).output

    def clause_closed(self, directions):
        """(ii): no rayless direction lies in the closure of the edge-ends."""
        hubs = [pt for pt in directions.points if pt.source == RAYLESS_HUB]
        limits = [S for S in directions.families() if S.source == FROM_END]
        found = []
        for x in hubs:
            for S in limits:
                if all(P.same_block(x.id, S.id) for P in directions.partitions()):
                    found.append((x.id, S.id))
            if x.family and x.nested:
                found.append((x.id, x.id))
        return not found, found

    def clause_open(self, directions):
        """(iii): every rayless direction has a basic block made of rayless directions only."""
        failures = []
        for x in directions.points:
            if x.source != RAYLESS_HUB:
                continue
            ok = False
            for P in directions.partitions():
                label = P.block_of(x.id)
                if label is None:
                    continue
                members = [directions.point(y) for y in P.points_in(label)]
                if all(y.source == RAYLESS_HUB and not y.nested for y in members):
                    ok = True
                    break
            if not ok:
                failures.append(x.id)
        return not failures, failures

    def clause_isolable(self, p):
        """(iv): every timid hub lies in a rayless component of G minus some finite edge set."""
        failures = []
        cuts = {}
        for v in self.candidates(p):
            s = p.skeleton([v])
            sinks = [n for n in s.nodes() if n != v and (s.attr(n, 'rays') or s.attr(n, 'copy_rays'))]
            if not sinks:
                cuts[v] = []
                continue
            cut = min_edge_cut(s, v, sinks)
            if not cut.finite:
                failures.append(v)
                continue
            rec = Separation(p).component_of(Separator(EDGE_SET, cut.witness), v)
            if rec.rays:
                failures.append(v)
            else:
                cuts[v] = cut.witness
        return not failures, {'not_isolable': failures, 'cuts': cuts}

    def clauses(self):
        hull = self.hull()
        verdict = self.timid_criterion(hull)
        spaces = Spaces(hull, **self.space_args)
        directions = spaces.edge_directions()
        ends = spaces.edge_ends()
        closed, closed_trace = self.clause_closed(directions)
        opened, open_trace = self.clause_open(directions)
        isolable, isolable_trace = self.clause_isolable(hull)
        clauses = {'timid_criterion': verdict.compact, 'summary_compact': ends.is_compact(),
                   'iota_closed': closed, 'rayless_open': opened, 'hubs_isolable': isolable}
        report = ClauseReport(self.p.name, clauses, {'timid_criterion': verdict.to_document(),
                                                     'iota_closed': closed_trace, 'rayless_open': open_trace,
                                                     'hubs_isolable': isolable_trace})
        if report.agree:
            logging.info('Compactness clauses agree on %s: %s' % (self.p.name, verdict.compact))
        else:
            logging.warning('Compactness clauses disagree on %s: %s' % (self.p.name, clauses))
        return report

    def iota_check(self):
        """
        Compact: on the candidate built by quotient and dropping unchained finite families, iota is a bijection and
        a homeomorphism at resolution. Not compact: iota on the hull misses a direction or has a non-closed image.
        """
        hull = self.hull()
        verdict = self.timid_criterion(hull)
        if verdict.compact:
            candidate = dense_candidate(hull)
        else:
            candidate = hull
        spaces = Spaces(candidate, **self.space_args)
        ends, directions = spaces.edge_ends(), spaces.edge_directions()
        m = dict((x.id, iota(directions, x).id) for x in ends.points)
        bijective = len(set(m.values())) == len(m) == len(directions)
        closed, _ = self.clause_closed(directions)
        failures = []
        if verdict.compact and bijective:
            failures = correspondence_check(ends, directions, m, sep_map=lambda F: F).failures
        report = IotaReport(self.p.name, verdict.compact, bijective, closed, candidate.name, failures)
        if not report.consistent:
            logging.warning('iota on %s is inconsistent with compactness: %s' % (self.p.name, report.to_document()))
        return report


def dense_candidate(p):
    """The quotient G/~ without unchained finite families; timid hubs lose their finite appendages."""
    from endspace.Quotient import quotient_sim
    q = quotient_sim(p).output
    doc = q.to_document()
    kept = [f for f in doc['families'] if f.get('chained') or f['pattern'] in ('Ray', 'StarOfRays')]
    if len(kept) == len(doc['families']):
        return q
    doc['families'] = kept
    doc['name'] = 'dense(%s)' % p.name
    return parse_presentation(doc)


def _check_induced(p, H):
    for v in H.core.vertices:
        if v not in p.core:
            raise NotInduced('Core vertex %s of %s is not in %s' % (v, H.name, p.name))
    if not H.core.is_induced_subgraph_of(p.core):
        raise NotInduced('Core of %s is not the induced core of %s' % (H.name, p.name))
    for g in H.gadgets:
        pg = p.gadget_by_id.get(g.id)
        if pg is None or pg.kind != g.kind:
            raise NotInduced('Gadget %s of %s does not match %s' % (g.id, H.name, p.name))
        kept = [(h, m) for h, m in pg.attachments if _host_in(H, h)]
        if sorted(map(repr, kept)) != sorted(map(repr, g.attachments)):
            raise NotInduced('Gadget %s of %s drops attachments inside the subgraph' % (g.id, H.name))
    for f in H.families:
        pf = p.family_by_id.get(f.id)
        if pf is None or pf.pattern.kind != f.pattern.kind:
            raise NotInduced('Family %s of %s does not match %s' % (f.id, H.name, p.name))


def _host_in(H, host):
    if host.kind == 'core':
        return host.target in H.core
    return host.target in H.gadget_by_id


def _in_H(H, v):
    try:
        H.resolve(v)
        return True
    except UnresolvedRef:
        return False


def verify_dense_subgraph(p, H, depth=6):
    """
    (a) G minus H is rayless; (b) every component of G minus H meets H in a single vertex; (c) every timid
    infinite-degree vertex of H leaves at most one rayless component of H minus it.
    """
    require_declarative(p, 'verify_dense_subgraph')
    _check_induced(p, H)
    conditions = {'rayless_outside': [], 'single_attachment': [], 'rayless_components': []}
    for g in p.gadgets:
        if g.id not in H.gadget_by_id:
            conditions['rayless_outside'].append('g:%s' % g.id)
    for f in p.families:
        if f.id not in H.family_by_id and (f.chained or not f.pattern.finite):
            conditions['rayless_outside'].append('f:%s' % f.id)
    t = p.truncate(depth)
    inside = set(v for v in t.graph.vertices if _in_H(H, v))
    rest = t.graph.without_vertices(inside)
    for comp in rest.components():
        attached = set()
        for v in comp:
            attached.update(u for u in t.graph.neighbors(v) if u in inside)
        if len(attached) != 1:
            conditions['single_attachment'].append((sort_vertices(comp)[0], sort_vertices(attached)))
    sep = Separation(H)
    for v in Compactness(H).candidates():
        records = sep.components(Separator(VERTEX_SET, [v]), focus=[v])
        rayless = [r for r in records if not r.rays]
        if len(rayless) > 1 or any(r.multiplicity != 1 for r in rayless):
            conditions['rayless_components'].append((v, [r.representative for r in rayless]))
    report = DenseReport(H.name, conditions)
    logging.info('Dense subgraph check of %s in %s: %s' % (H.name, p.name, report.passed))
    return report


def compact_by_timid_criterion(p, **kwargs):
    return Compactness(p, **kwargs).timid_criterion()


def raylesschar_clauses(p, **kwargs):
    return Compactness(p, **kwargs).clauses()


def compact_space_as_direction_space(p, **kwargs):
    return Compactness(p, **kwargs).iota_check()


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    from endspace.catalog import load_all
    for p in load_all():
        print(p.name, compact_by_timid_criterion(p), raylesschar_clauses(p).clauses)
