# coding=utf-8
import io
import os
import shutil
import tempfile
import unittest
from unittest import mock

import ujson

from endspace.Oracle import DifferentialReport
from endspace.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with mock.patch('sys.stdout', out), mock.patch('sys.stderr', err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestCommandLine(unittest.TestCase):
    """Exit codes and outputs of the endspace command"""

    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir)

    def path(self, name):
        return os.path.join(self.dir, name)

    def test_catalog(self):
        code, out, _ = run('catalog', 'list')
        assert code == 0
        assert out.splitlines()[0].startswith('clique_star\t')
        code, out, _ = run('catalog', 'show', 'three_cliques')
        assert code == 0
        assert ujson.loads(out)['name'] == 'three_cliques'

    def test_analyze_timid_ends(self):
        code, out, _ = run('analyze', 'three_cliques', '--space', 'timid-ends')
        assert code == 0
        assert out.startswith('timid-ends of three_cliques: 1 point\n')
        code, out, _ = run('analyze', 'three_cliques', '--space', 'timid-ends', '--json')
        assert len(ujson.loads(out)['points']) == 1

    def test_analyze_u_ends(self):
        code, out, _ = run('analyze', 'star_of_rays', '--space', 'u-directions', '--U', 'all-c:c', '--json',
                           '--brief')
        assert code == 0
        doc = ujson.loads(out)
        assert 'partitions' not in doc
        assert 'hub:c:c' in [pt['id'] for pt in doc['points']]

    def test_json_is_byte_identical(self):
        first = run('analyze', 'two_cliques_bridge', '--json')[1]
        second = run('analyze', 'two_cliques_bridge', '--json')[1]
        assert first == second

    def test_truncate_dot(self):
        code, out, _ = run('truncate', 'star_of_rays', '-n', '3', '--dot', self.path('out.dot'))
        assert code == 0
        assert 'depth 3: 10 vertices' in out
        with open(self.path('out.dot')) as f:
            lines = [l for l in f.read().splitlines() if l.startswith('  "') and ' -- ' not in l]
        assert len(lines) == 10

    def test_truncate_star_comb(self):
        code, out, _ = run('truncate', 'infinite_star', '-n', '6', '--star-comb', '4', '--json')
        assert code == 0
        doc = ujson.loads(out)
        assert doc['vertices'] == 7
        assert doc['certificate']['kind'] == 'Star'

    def test_transform(self):
        code, out, _ = run('transform', 'two_cliques_bridge', '--op', 'timid2edge', '--json')
        assert code == 0
        assert ujson.loads(out)['op'] == 'timid2edge'

    def test_verify_hgraph(self):
        code, out, _ = run('verify', 'three_cliques', '--theorem', 'hgraph')
        assert code == 0
        assert out.startswith('hgraph on three_cliques: pass')

    def test_oracle_with_query_file(self):
        with open(self.path('queries.json'), 'w') as f:
            f.write(ujson.dumps([{'kind': 'same_component', 'a': 'f:R:0:0', 'b': 'f:R:1:0'}]))
        code, out, _ = run('oracle', 'omega_rays', '--queries', self.path('queries.json'),
                           '--report', self.path('report.json'))
        assert code == 0
        assert out.startswith('1 queries, 0 mismatches')
        with open(self.path('report.json')) as f:
            assert ujson.loads(f.read())['passed']

    def test_oracle_mismatch_exit_code(self):
        failing = DifferentialReport([{'query': 'q', 'symbolic': 1, 'oracle': 2, 'depth': 5, 'agree': False}])
        with mock.patch('endspace.cli.run_differential', return_value=failing):
            code, _, _ = run('oracle', 'three_cliques')
        assert code == 1

    def test_input_errors(self):
        code, _, err = run('analyze', self.path('missing.json'))
        assert code == 2
        assert 'A presentation is a JSON object' in err
        with open(self.path('bad.json'), 'w') as f:
            f.write('{"name": "loop", "core": {"vertices": ["a"], "edges": [["a", "a"]]}}')
        assert run('analyze', self.path('bad.json'))[0] == 2
        assert run('catalog', 'show')[0] == 2
        with open(self.path('queries.json'), 'w') as f:
            f.write('{"kind": "cut"}')
        assert run('oracle', 'three_cliques', '--queries', self.path('queries.json'))[0] == 2

    def test_presentation_file(self):
        with open(self.path('edge.json'), 'w') as f:
            f.write('{"name": "edge", "core": {"vertices": ["a", "b"], "edges": [["a", "b"]]}}')
        code, out, _ = run('analyze', self.path('edge.json'), '--space', 'ends')
        assert code == 0
        assert out.startswith('ends of edge: 0 points')


if __name__ == '__main__':
    unittest.main()
