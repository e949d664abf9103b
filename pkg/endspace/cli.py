# -*- coding: utf-8 -*-
from __future__ import print_function
import argparse
import logging
import os
import sys
import traceback

import ujson

from endspace import catalog
from endspace.Compactness import NotInduced
from endspace.Completion import UnpresentableThreading
from endspace.Cuts import USpec, UnsupportedUSpec
from endspace.FiniteGraph import SchemaError, DanglingRef, LoopEdge, UnresolvedRef
from endspace.HGraph import DominationUndecidable
from endspace.Oracle import Oracle, Query, build_query_matrix, run_differential
from endspace.Presentation import parse_presentation
from endspace.Quotient import UnpresentableClass
from endspace.Separation import NonSkeletonSeparator
from endspace.Spaces import Spaces, ResolutionOverflow, IncoherentChain, PartialBijection
from endspace.StarComb import TargetTooSmall, star_or_comb
from endspace.Transforms import OPS, NotTimid, transform
from endspace.Verify import THEOREMS, verify
from endspace.formatter import DotFormatter, to_json

LOG_FORMAT = "%(asctime)s\t%(levelname)s\t%(name)s\t%(message)s"

SPACES = ('ends', 'edge-ends', 'timid-ends', 'u-ends', 'edge-directions', 'u-directions', 'vertex-directions')

INPUT_ERRORS = (SchemaError, DanglingRef, LoopEdge, UnresolvedRef, NonSkeletonSeparator, UnsupportedUSpec,
                ResolutionOverflow, IncoherentChain, PartialBijection, DominationUndecidable,
                UnpresentableThreading, UnpresentableClass, NotTimid, NotInduced, TargetTooSmall,
                IOError, KeyError, ValueError)

SCHEMA_HELP = """A presentation is a JSON object:
  {"name": str,
   "core": {"vertices": [id...], "edges": [[id, id]...]},
   "gadgets": [{"id": id, "kind": "Ray"|"OmegaClique"|"StarOfRays",
                "attachments": [{"host": core id | {"gadget": id, "position": k}, "mode": "FirstOnly"|"All"}],
                "core_members": [id...]}],
   "families": [{"id": id, "pattern": "SingleVertex"|"Ray"|"StarOfRays"|{"vertices": [...], "edges": [...]},
                 "host": core id | null, "per_copy_edges": [[local, host | {"along": gadget id}]...],
                 "chained": bool, "chain_edge": [local, local]}],
   "connected_hint": bool}
Vertex names: c:<core id>, g:<gadget>:<index>[:<index>], f:<family>:<copy>:<local>.
Catalog names may be used in place of a file: %s
"""


def load_input(name):
    """A catalog name or a path to a presentation document."""
    if name in catalog.names():
        return catalog.load(name)
    if not os.path.exists(name):
        raise IOError('%s is neither a catalog presentation nor a file' % name)
    with open(name, 'rb') as f:
        return parse_presentation(f.read())


def summary_of(p, space, U=None, resolution=None):
    spaces = Spaces(p, capped_subset_size=resolution)
    if space == 'ends':
        return spaces.ends()
    if space == 'edge-ends':
        return spaces.edge_ends()
    if space == 'timid-ends':
        return spaces.timid_ends()
    if space == 'edge-directions':
        return spaces.edge_directions()
    if space == 'vertex-directions':
        return spaces.vertex_directions()
    U = USpec.parse(U)
    if space == 'u-ends':
        return spaces.u_ends(U)
    return spaces.u_directions(U)


def cmd_catalog(args):
    if args.action == 'list':
        if args.json:
            print(to_json(dict((name, catalog.NOTES.get(name, '')) for name in catalog.names())))
        else:
            for name in catalog.names():
                print('%s\t%s' % (name, catalog.NOTES.get(name, '')))
        return 0
    if args.name is None:
        raise ValueError('catalog show needs a presentation name')
    print(ujson.dumps(catalog.load(args.name).to_document(), sort_keys=True, indent=2))
    return 0


def cmd_analyze(args):
    p = load_input(args.input)
    summary = summary_of(p, args.space, args.U, args.resolution)
    if args.json:
        print(to_json(summary.to_document(with_partitions=not args.brief)))
        return 0
    entries = summary.reported_points()
    print('%s of %s: %d point%s%s' % (args.space, p.name, len(entries), '' if len(entries) == 1 else 's',
                                      ' (resolution capped)' if summary.capped else ''))
    for pt, explicit in entries:
        print('  %s\t%s\t%s%s%s' % (pt.id, pt.shape, pt.source, '\tnested' if pt.nested else '',
                                    '\texplicit %s' % ','.join(explicit) if explicit else ''))
    for x, S in summary.accumulation():
        print('  %s accumulates on %s' % (x, S))
    print('compact: %s' % summary.is_compact())
    return 0


def cmd_transform(args):
    p = load_input(args.input)
    result = transform(p, args.op)
    if args.json:
        print(to_json(result))
    elif hasattr(result.output, 'dumps'):
        print(result.output.dumps())
    else:
        print(ujson.dumps(result.output.to_document(), sort_keys=True))
    return 0


def cmd_verify(args):
    p = load_input(args.input)
    report = verify(p, args.theorem)
    if args.json:
        print(to_json(report))
    else:
        print('%s on %s: %s' % (args.theorem, p.name, 'pass' if report.passed else 'FAIL'))
        for name in sorted(report.checks):
            print('  %s\t%s' % (name, 'pass' if report.checks[name]['passed'] else 'FAIL'))
    return 0 if report.passed else 1


def cmd_oracle(args):
    p = load_input(args.input)
    if args.queries:
        with open(args.queries, 'rb') as f:
            try:
                docs = ujson.loads(f.read())
            except ValueError as e:
                raise SchemaError('Query matrix %s is not valid JSON: %s' % (args.queries, e)) from e
        if not isinstance(docs, list):
            raise SchemaError('A query matrix is a JSON list of queries')
        queries = [Query.from_document(d) for d in docs]
    else:
        queries = build_query_matrix(p)
    report = run_differential(queries, {p.name: p}, Oracle(max_depth=args.max_depth))
    if args.report:
        with open(args.report, 'w') as f:
            f.write(to_json(report))
    if args.json:
        print(to_json(report))
    else:
        print('%d queries, %d mismatches' % (len(report.rows), len(report.mismatches)))
        for row in report.mismatches:
            print('  %s\tsymbolic %s\toracle %s' % (row['query'], row['symbolic'], row['oracle']))
    return 0 if report.passed else 1


def cmd_truncate(args):
    p = load_input(args.input)
    t = p.truncate(args.n)
    certificate = None
    if args.star_comb:
        certificate = star_or_comb(t, t.graph.vertices, args.star_comb)
    if args.dot:
        with open(args.dot, 'w') as f:
            f.write(DotFormatter().format(t.graph, p.name, certificate))
    doc = {'presentation': p.name, 'depth': t.depth, 'vertices': len(t.graph), 'edges': len(t.graph.edges),
           'frontier': sorted(t.frontier)}
    if certificate is not None:
        doc['certificate'] = certificate
    if args.json:
        print(to_json(doc))
    elif args.dot is None:
        print(DotFormatter().format(t.graph, p.name, certificate), end='')
    else:
        print('%s at depth %d: %d vertices, %d edges, %d on the frontier' % (p.name, t.depth, len(t.graph),
                                                                            len(t.graph.edges), len(t.frontier)))
        if certificate is not None:
            print(certificate)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='store_true', help='log at INFO level')
    common.add_argument('--json', action='store_true', help='machine-readable output')

    parser = argparse.ArgumentParser(prog='endspace', description='Ends, edge-ends and directions of infinite graphs '
                                                                  'given by finite presentations.')
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('catalog', parents=[common], help='list or show the shipped presentations')
    p.add_argument('action', choices=['list', 'show'])
    p.add_argument('name', nargs='?')
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser('analyze', parents=[common], help='summarize an end or direction space')
    p.add_argument('input', help='catalog name or presentation file')
    p.add_argument('--space', choices=SPACES, default='edge-ends')
    p.add_argument('--U', default='all', help='vertex set for u-ends and u-directions: base[-v,...][+v,...][;id=on]')
    p.add_argument('--resolution', type=int, default=None, help='separator size once the subset budget is exceeded')
    p.add_argument('--brief', action='store_true', help='leave the partitions out of the JSON summary')
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser('transform', parents=[common], help='apply a graph construction')
    p.add_argument('input')
    p.add_argument('--op', choices=OPS, required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser('verify', parents=[common], help='run a verification suite')
    p.add_argument('input')
    p.add_argument('--theorem', choices=THEOREMS, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('oracle', parents=[common], help='differential test against brute-force truncations')
    p.add_argument('input')
    p.add_argument('--queries', help='JSON list of queries; default: the generated matrix for the presentation')
    p.add_argument('--report', help='write the full report to this file')
    p.add_argument('--max-depth', type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser('truncate', parents=[common], help='export a finite truncation')
    p.add_argument('input')
    p.add_argument('-n', type=int, required=True, help='depth')
    p.add_argument('--dot', help='write DOT to this file')
    p.add_argument('--star-comb', type=int, default=None, metavar='K', help='overlay a star or comb with K targets')
    p.set_defaults(func=cmd_truncate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format=LOG_FORMAT)
    try:
        return args.func(args)
    except INPUT_ERRORS as e:
        logging.error(traceback.format_exc())
        print('error: %s' % e, file=sys.stderr)
        print(SCHEMA_HELP % ', '.join(catalog.names()), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
