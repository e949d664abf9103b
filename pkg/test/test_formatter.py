# coding=utf-8
import unittest

import ujson

from endspace.FiniteGraph import FiniteGraph
from endspace.StarComb import Star
from endspace.catalog import load
from endspace.formatter import DotFormatter, JsonFormatter, NestingLevelTooHigh, to_dot, to_json


def vertex_lines(dot):
    return [line.strip() for line in dot.splitlines() if line.startswith('  "') and ' -- ' not in line]


class TestDotFormatter(unittest.TestCase):

    def test_star_of_rays_depth_3(self):
        t = load('star_of_rays').truncate(3)
        dot = to_dot(t.graph, t.source)
        lines = vertex_lines(dot)
        assert len(lines) == 10
        assert lines[0] == '"c:c" ;'
        assert dot.startswith('graph "star_of_rays" {')
        assert dot.endswith('}\n')

    def test_deterministic(self):
        a = load('three_cliques').truncate(4)
        b = load('three_cliques').truncate(4)
        assert to_dot(a.graph, 'x') == to_dot(b.graph, 'x')

    def test_canonical_numeric_order(self):
        g = FiniteGraph(['g:r:10', 'g:r:9', 'g:r:2'], [('g:r:9', 'g:r:10')])
        assert vertex_lines(to_dot(g)) == ['"g:r:2" ;', '"g:r:9" ;', '"g:r:10" ;']

    def test_certificate_overlay(self):
        g = FiniteGraph(['a', 'b', 'c'], [('a', 'b'), ('a', 'c')])
        dot = to_dot(g, 'star', Star('a', ['b', 'c'], [['a', 'b'], ['a', 'c']]))
        assert '"a" [shape=doublecircle, color=red] ;' in dot
        assert '"a" -- "b" [color=red, penwidth=2] ;' in dot

    def test_quoting(self):
        assert DotFormatter().quote('a"b') == '"a\\"b"'

    def test_skeleton(self):
        dot = DotFormatter().format_skeleton(load('three_cliques').skeleton())
        assert 'label="omega"' in dot
        assert dot == DotFormatter().format_skeleton(load('three_cliques').skeleton())


class TestJsonFormatter(unittest.TestCase):

    def test_plain_values(self):
        doc = ujson.loads(to_json({'b': float('inf'), 'a': frozenset(['y', 'x']), 'c': (1, 2)}))
        assert doc == {'a': ['x', 'y'], 'b': 'Infinite', 'c': [1, 2]}

    def test_sorted_keys(self):
        text = to_json({'z': 1, 'a': 2}, indent=0)
        assert text.index('"a"') < text.index('"z"')

    def test_objects_export_documents(self):
        t = load('star_of_rays').truncate(2)
        star = Star('c:c', ['g:s:0:0'], [['c:c', 'g:s:0:0']])
        doc = ujson.loads(to_json({'certificate': star}))
        assert doc['certificate']['kind'] == 'Star'
        assert doc['certificate']['tips'] == ['g:s:0:0']
        assert star.verify(t.graph, t.graph.vertices)

    def test_nesting_limit(self):
        value = []
        for _ in range(JsonFormatter.Max_nesting + 2):
            value = [value]
        with self.assertRaises(NestingLevelTooHigh):
            to_json(value)


if __name__ == '__main__':
    unittest.main()
