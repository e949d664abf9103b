from __future__ import print_function, absolute_import
import ujson

from endspace.FiniteGraph import edge_name, sort_vertices
from endspace.Presentation import INFINITE


class NestingLevelTooHigh(Exception):
    pass


class DictionaryAdapter(object):
    def getfields(self, dict):
        return sorted(dict.keys(), key=str)

    def getval(self, dict, field):
        if field in dict:
            return dict[field]
        else:
            return None


class ObjectAdapter(object):
    """Objects exporting themselves through to_document(); the document of the last object is kept."""

    def __init__(self):
        self.obj = None
        self.doc = None

    def _document(self, obj):
        if obj is not self.obj:
            self.obj, self.doc = obj, obj.to_document()
        return self.doc

    def getfields(self, obj):
        return sorted(self._document(obj).keys())

    def getval(self, obj, field):
        return self._document(obj).get(field)


class JsonFormatter(object):
    """Deterministic JSON: sorted keys, sets as sorted lists, omega and infinite values spelled out."""
    Max_nesting = 64

    def plain(self, value, level=0):
        if level > self.Max_nesting:
            raise NestingLevelTooHigh('Value nests deeper than %d levels' % self.Max_nesting)
        if value is None or isinstance(value, (bool, str, int)):
            return value
        if isinstance(value, float):
            return 'Infinite' if value == INFINITE else value
        if isinstance(value, dict):
            adapter = DictionaryAdapter()
        elif hasattr(value, 'to_document'):
            adapter = ObjectAdapter()
        elif isinstance(value, (set, frozenset)):
            return [self.plain(x, level + 1) for x in sorted(value, key=str)]
        elif hasattr(value, '__iter__'):
            return [self.plain(x, level + 1) for x in value]
        else:
            raise Exception('Cannot format value of type %s: %r' % (type(value), value))
        return dict((str(f), self.plain(adapter.getval(value, f), level + 1)) for f in adapter.getfields(value))

    def format(self, value, indent=2):
        return ujson.dumps(self.plain(value), sort_keys=True, indent=indent, escape_forward_slashes=False)


class DotFormatter(object):
    """
    Canonical DOT for truncations and skeletons: vertices in canonical order, then edges in canonical order, so that
    identical graphs always give identical bytes.
    """
    Header = 'graph "%s" {\n  node [fontname="Helvetica", fontsize=10, shape=circle] ;\n'

    def quote(self, name):
        return '"%s"' % name.replace('\\', '\\\\').replace('"', '\\"')

    def _overlay(self, certificate):
        """:return: (vertex -> attributes, edge name -> attributes) highlighting a star or comb"""
        vertices, edges = {}, {}
        if certificate is None or certificate.kind == 'Exhausted':
            return vertices, edges
        if certificate.kind == 'Star':
            vertices[certificate.center] = 'shape=doublecircle, color=red'
            ends = certificate.tips
        else:
            for a, b in zip(certificate.spine, certificate.spine[1:]):
                edges[edge_name(a, b)] = 'color=blue, penwidth=3'
            for v in certificate.spine:
                vertices[v] = 'color=blue'
            ends = certificate.teeth
        for path in certificate.paths:
            for a, b in zip(path, path[1:]):
                edges[edge_name(a, b)] = 'color=red, penwidth=2'
        for v in ends:
            vertices[v] = 'shape=box, color=red'
        return vertices, edges

    def format(self, graph, name='G', certificate=None):
        marked, drawn = self._overlay(certificate)
        lines = [self.Header % name]
        for v in graph.vertices:
            attrs = marked.get(v)
            lines.append('  %s%s ;\n' % (self.quote(v), ' [%s]' % attrs if attrs else ''))
        for u, v in graph.edges:
            attrs = drawn.get(edge_name(u, v))
            lines.append('  %s -- %s%s ;\n' % (self.quote(u), self.quote(v), ' [%s]' % attrs if attrs else ''))
        lines.append('}\n')
        return ''.join(lines)

    def format_skeleton(self, s):
        """Region nodes as boxes, omega arcs bold, unit arcs labelled with the number of edges they carry."""
        lines = [self.Header % s.source]
        for n in sort_vertices(s.graph.nodes()):
            if s.is_concrete(n):
                lines.append('  %s ;\n' % self.quote(n))
            else:
                lines.append('  %s [shape=box, label="%s (%s)"] ;\n' % (self.quote(n), n, s.kind(n)))
        arcs = sorted(((tuple(sort_vertices([u, v])), data) for u, v, data in s.graph.edges(data=True)),
                      key=lambda x: x[0])
        for (u, v), data in arcs:
            if data.get('omega'):
                attrs = 'style=bold, label="omega"'
            else:
                attrs = 'label="%d"' % len(data['edges'])
            lines.append('  %s -- %s [%s] ;\n' % (self.quote(u), self.quote(v), attrs))
        lines.append('}\n')
        return ''.join(lines)


def to_json(value, indent=2):
    return JsonFormatter().format(value, indent)


def to_dot(graph, name='G', certificate=None):
    return DotFormatter().format(graph, name, certificate)


# Testing
if __name__ == '__main__':
    from endspace.catalog import load
    from endspace.StarComb import star_or_comb

    t = load('star_of_rays').truncate(3)
    print(to_dot(t.graph, t.source, star_or_comb(t, t.graph.vertices, 3)))
    print(to_json({'truncation': t.depth, 'frontier': t.frontier, 'value': float('inf')}))
    print(DotFormatter().format_skeleton(load('star_of_rays').skeleton()))
