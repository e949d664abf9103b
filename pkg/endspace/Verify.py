# -*- coding: utf-8 -*-
from __future__ import print_function
import itertools
import logging
import sys

from endspace.Compactness import Compactness
from endspace.Completion import check_completion
from endspace.Cuts import USpec, engine, check_alone_timid, check_timid_edge_separation
from endspace.HGraph import dominant_component_failures, component_bijection, check_hgraph_ends
from endspace.LineGraph import check_line_directions, direction_accumulation_failures
from endspace.Quotient import check_quotient
from endspace.Separation import Separation, Separator, VERTEX_SET
from endspace.Spaces import Spaces, correspondence_check, identity_map, rho_surjectivity_check, RAYLESS_HUB
from endspace.Subdivision import check_subdivision_timid_ends, check_timid_to_edge

THEOREMS = ('line-dir', 'hgraph', 'completion', 'quotient', 'timid', 'pidsurj', 'compactness', 'raylesschar')


class VerificationReport(object):
    """Named checks of one suite on one presentation; every check holds a pass flag and its evidence."""

    def __init__(self, theorem, presentation):
        self.theorem = theorem
        self.presentation = presentation
        self.checks = {}

    def add(self, name, passed, detail=None):
        if hasattr(detail, 'to_document'):
            detail = detail.to_document()
        self.checks[name] = {'passed': bool(passed), 'detail': detail}
        return passed

    @property
    def passed(self):
        return all(c['passed'] for c in self.checks.values())

    def __repr__(self):
        return 'VerificationReport(%s on %s: %s)' % (self.theorem, self.presentation,
                                                      'pass' if self.passed else 'fail')

    def to_document(self):
        return {'theorem': self.theorem, 'presentation': self.presentation, 'passed': self.passed,
                'checks': self.checks}


def _connected(p):
    return len(Separation(p).components(Separator(VERTEX_SET))) == 1


def verify_line_dir(p, report, **kwargs):
    corr = check_line_directions(p, **kwargs)
    report.add('correspondence', corr.passed, corr)
    if _connected(p):
        failures = direction_accumulation_failures(p, **kwargs)
        report.add('families_accumulate', not failures, failures)


def verify_hgraph(p, report, **kwargs):
    failures = dominant_component_failures(p)
    report.add('slot_components_at_most_two', not failures, failures)
    timid = engine(p).timid_vertices()
    bad = []
    checked = 0
    for k in range(3):
        for F in itertools.combinations(timid, k):
            checked += 1
            result = component_bijection(p, list(F))
            if not result.passed:
                bad.append(result.to_document())
    report.add('component_bijection', not bad, {'separators': checked, 'failures': bad})
    corr = check_hgraph_ends(p, **kwargs)
    report.add('ends_correspondence', corr.passed, corr)


def verify_completion(p, report, samples=1000, **kwargs):
    result = check_completion(p, samples, **kwargs)
    report.add('correspondence', result.correspondence.passed, result.correspondence)
    report.add('no_rayless_directions_left', not result.rayless_after, result.rayless_after)
    report.add('separator_bound', not result.bound_failures,
               {'samples': result.samples, 'failures': result.bound_failures})


def verify_quotient(p, report, **kwargs):
    result = check_quotient(p, **kwargs)
    report.add('quotient', result.passed, result)


def verify_timid(p, report, **kwargs):
    corr = check_subdivision_timid_ends(p, **kwargs)
    report.add('subdivision_timid_ends', corr.passed, corr)
    corr = check_timid_to_edge(p, **kwargs)
    report.add('timid_to_edge', corr.passed, corr)
    failures = check_timid_edge_separation(p)
    report.add('timid_edge_separation', not failures, failures)
    failures = check_alone_timid(p)
    report.add('alone_timid', not failures, failures)


def verify_pidsurj(p, report, **kwargs):
    """rho is onto exactly when the boundary lies in U, for U = V and U = t(G); U = t(G) directions are the timid ends."""
    for text in ('all', 'timid'):
        rho = rho_surjectivity_check(p, USpec.parse(text), **kwargs)
        report.add('rho_%s' % text, rho.consistent, rho)
    spaces = Spaces(p, **kwargs)
    U = USpec.parse('timid')
    ends, directions = spaces.u_ends(U), spaces.u_directions(U)
    rayless = [pt.id for pt in directions.points if pt.source == RAYLESS_HUB]
    if rayless:
        report.add('timid_directions_are_timid_ends', True, {'skipped': 'rayless U-directions %s' % rayless})
    elif sorted(ends.ids()) != sorted(directions.ids()):
        report.add('timid_directions_are_timid_ends', False, {'ends': ends.ids(), 'directions': directions.ids()})
    else:
        corr = correspondence_check(ends, directions, identity_map(ends), sep_map=lambda F: F)
        report.add('timid_directions_are_timid_ends', corr.passed, corr)


def verify_compactness(p, report, **kwargs):
    c = Compactness(p, **kwargs)
    verdict = c.timid_criterion(c.hull())
    compact = Spaces(c.hull(), **kwargs).edge_ends().is_compact()
    report.add('criterion_matches_summary', verdict.compact == compact,
               {'timid_criterion': verdict.to_document(), 'summary_compact': compact})
    iota = c.iota_check()
    report.add('iota', iota.consistent, iota)


def verify_raylesschar(p, report, **kwargs):
    clauses = Compactness(p, **kwargs).clauses()
    report.add('clauses_agree', clauses.agree, clauses)


SUITES = {
    'line-dir': verify_line_dir,
    'hgraph': verify_hgraph,
    'completion': verify_completion,
    'quotient': verify_quotient,
    'timid': verify_timid,
    'pidsurj': verify_pidsurj,
    'compactness': verify_compactness,
    'raylesschar': verify_raylesschar,
}


def verify(p, theorem, **kwargs):
    """
    :param p: Presentation
    :param theorem: one of THEOREMS
    :return: VerificationReport
    """
    if theorem not in SUITES:
        raise ValueError('Unknown theorem %s, known: %s' % (theorem, ', '.join(THEOREMS)))
    report = VerificationReport(theorem, p.name)
    SUITES[theorem](p, report, **kwargs)
    if report.passed:
        logging.info('%s holds on %s' % (theorem, p.name))
    else:
        failed = sorted(name for name, c in report.checks.items() if not c['passed'])
        logging.warning('%s fails on %s: %s' % (theorem, p.name, ', '.join(failed)))
    return report


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.INFO)

    from endspace.catalog import load
    for theorem in THEOREMS:
        print(verify(load('three_cliques'), theorem))
