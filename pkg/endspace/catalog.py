# -*- coding: utf-8 -*-
import copy

from endspace.Presentation import parse_presentation


def _clique(id, members=(), attachments=()):
    return {'id': id, 'kind': 'OmegaClique', 'core_members': list(members), 'attachments': list(attachments)}


def _ray(id, host=None, mode='FirstOnly'):
    return {'id': id, 'kind': 'Ray', 'attachments': [{'host': host, 'mode': mode}] if host is not None else []}


def _star(id, center):
    return {'id': id, 'kind': 'StarOfRays', 'attachments': [{'host': center, 'mode': 'FirstOnly'}]}


def _core(vertices, edges=()):
    return {'vertices': list(vertices), 'edges': [list(e) for e in edges]}


CATALOG = {
    'three_cliques': {
        'name': 'three_cliques',
        'core': _core(['a', 'w'], [('a', 'w')]),
        'gadgets': [_clique('A', ['a']), _clique('B', ['w']), _clique('C', ['w'])],
    },
    'two_cliques_bridge': {
        'name': 'two_cliques_bridge',
        'core': _core(['a', 'b'], [('a', 'b')]),
        'gadgets': [_clique('K1', ['a']), _clique('K2', ['b'])],
    },
    'star_of_rays': {
        'name': 'star_of_rays',
        'core': _core(['c']),
        'gadgets': [_star('s', 'c')],
    },
    'omega_rays': {
        'name': 'omega_rays',
        'connected_hint': False,
        'families': [{'id': 'R', 'pattern': 'Ray'}],
    },
    'clique_star': {
        'name': 'clique_star',
        'core': _core(['v0']),
        'gadgets': [_clique('K', ['v0']), _star('s', 'v0')],
    },
    'double_ray_dominator': {
        'name': 'double_ray_dominator',
        'core': _core(['hub']),
        'gadgets': [_ray('r1', 'hub', 'All'), _ray('r2', 'hub', 'All')],
    },
    'infinite_star': {
        'name': 'infinite_star',
        'core': _core(['c']),
        'families': [{'id': 'L', 'pattern': 'SingleVertex', 'host': 'c'}],
    },
    'notendspace_graph': {
        'name': 'notendspace_graph',
        'gadgets': [_ray('spine')],
        'families': [{'id': 'fan', 'pattern': 'StarOfRays', 'per_copy_edges': [['hub', {'along': 'spine'}]]}],
    },
    'nonmet_countable': {
        'name': 'nonmet_countable',
        'gadgets': [_clique('K')],
        'families': [{'id': 'R', 'pattern': 'Ray', 'per_copy_edges': [['0', {'along': 'K'}]]}],
    },
    'timid_to_edge_demo': {
        'name': 'timid_to_edge_demo',
        'core': _core(['v', 'v2', 'x'], [('v', 'v2'), ('v2', 'x')]),
        'gadgets': [_clique('K', ['v']), _clique('K2', ['v2']), _ray('r', 'x')],
    },
    'twin_hubs': {
        'name': 'twin_hubs',
        'core': _core(['u', 'v']),
        'gadgets': [_ray('r', 'u'), _ray('q', 'v')],
        'families': [{'id': 'T', 'pattern': 'SingleVertex', 'per_copy_edges': [['0', 'u'], ['0', 'v']]}],
    },
}

NOTES = {
    'three_cliques': 'Three omega-cliques; A hangs at a, B and C share w, edge a-w. Three ends, two edge-ends, '
                     'one timid end.',
    'two_cliques_bridge': 'Two omega-cliques joined by one bridge: two edge-ends, one timid end.',
    'star_of_rays': 'Omega rays glued at a common center; the center is a timid rayless direction.',
    'omega_rays': 'Omega disjoint rays: a discrete, non-compact edge-end space.',
    'clique_star': 'An omega-clique and a star of rays sharing v0; openness fails for U = t(G).',
    'double_ray_dominator': 'A hub adjacent to every vertex of two rays: one edge-end, two ends.',
    'infinite_star': 'The infinite star: rayless, one rayless edge direction.',
    'notendspace_graph': 'A spine ray with a star of rays hung at each spine vertex: its edge-direction space is '
                         'not the end space of its line graph.',
    'nonmet_countable': 'An omega-clique with a pendant ray at every clique vertex (countable-depth analog of the '
                        'non-metrizable example; the uncountable statement is out of scope).',
    'timid_to_edge_demo': 'Two cliques at a path v-v2-x plus a pendant ray at x.',
    'twin_hubs': 'Two timid hubs joined by omega many 2-paths, each hub carrying a ray.',
}


def names():
    return sorted(CATALOG.keys())


def document(name):
    if name not in CATALOG:
        raise KeyError('Unknown catalog presentation %s, known: %s' % (name, ', '.join(names())))
    return copy.deepcopy(CATALOG[name])


def load(name):
    return parse_presentation(document(name))


def load_all():
    return [load(name) for name in names()]
