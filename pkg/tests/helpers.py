"""Shared strategies and independent oracles for the test suite."""

import itertools
import random
from fractions import Fraction

import networkx as nx
import sympy
from hypothesis import strategies as st

from plumbtool.graph import PlumbingGraph, build_graph


def random_tree(rng: random.Random, n: int, lo: int = -4, hi: int = 2) -> PlumbingGraph:
    weights = [rng.randint(lo, hi) for _ in range(n)]
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return build_graph(weights, edges)


@st.composite
def trees(draw, min_size=1, max_size=9, lo=-4, hi=2):
    n = draw(st.integers(min_size, max_size))
    weights = draw(st.lists(st.integers(lo, hi), min_size=n, max_size=n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    return build_graph(weights, [(p, i + 1) for i, p in enumerate(parents)])


@st.composite
def symmetric_matrices(draw, max_dim=6, lo=-5, hi=5):
    n = draw(st.integers(0, max_dim))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(st.integers(lo, hi))
    return m


def cofactor_det(m):
    """Laplace expansion along the first row."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def descartes_inertia(m):
    """(n+, n-, n0) from sign changes of the characteristic polynomial.

    A symmetric matrix has only real eigenvalues, so Descartes' rule of
    signs counts positive and negative roots exactly.
    """
    n = len(m)
    if n == 0:
        return (0, 0, 0)
    x = sympy.Symbol("x")
    p = sympy.Matrix(m).charpoly(x)
    coeffs = [int(c) for c in p.all_coeffs()]
    zero = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zero += 1

    def changes(cs):
        signs = [c > 0 for c in cs if c != 0]
        return sum(a != b for a, b in zip(signs, signs[1:]))

    neg = [c * (-1) ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs)]
    return (changes(coeffs), changes(neg), zero)


def to_nx(g: PlumbingGraph) -> nx.Graph:
    h = nx.Graph()
    for v in g.vertices:
        h.add_node(v, w=g.weight(v))
    h.add_edges_from(g.edges)
    return h


def nx_isomorphic(g1: PlumbingGraph, g2: PlumbingGraph) -> bool:
    return nx.is_isomorphic(to_nx(g1), to_nx(g2), node_match=lambda a, b: a["w"] == b["w"])


def relabel(g: PlumbingGraph, rng: random.Random) -> PlumbingGraph:
    """Same graph with shuffled ids, shuffled insertion order and edge order."""
    ids = list(g.vertices)
    fresh = rng.sample(range(10 * len(ids) + 10), len(ids))
    mp = dict(zip(ids, fresh))
    order = ids[:]
    rng.shuffle(order)
    edges = [(mp[v], mp[u]) if rng.random() < 0.5 else (mp[u], mp[v]) for u, v in g.edges]
    rng.shuffle(edges)
    return PlumbingGraph({mp[v]: g.weight(v) for v in order}, edges)


def all_trees(n_max: int, weights):
    """Every labelled tree given by a parent array, for each weight vector."""
    for n in range(1, n_max + 1):
        for parents in itertools.product(*[range(i) for i in range(1, n)]):
            edges = [(p, i + 1) for i, p in enumerate(parents)]
            for ws in itertools.product(weights, repeat=n):
                yield build_graph(list(ws), edges)


def ncf_value(terms):
    x = Fraction(terms[-1])
    for c in reversed(terms[:-1]):
        x = c - 1 / x
    return x
