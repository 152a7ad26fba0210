"""Independent oracles and strategies shared by the test modules.

Nothing here calls into the solver code it is used to check.
"""
from fractions import Fraction
from itertools import combinations, product

from hypothesis import strategies as st

from densevc.hypergraph import KPartiteHypergraph, VertexRef


def brute_tau(h):
    """Minimum cover size by enumerating vertex subsets in increasing size."""
    verts = h.vertices()
    edges = [h.edge_vertices(e) for e in h.edges]
    for r in range(len(verts) + 1):
        for c in combinations(verts, r):
            c = set(c)
            if all(any(v in c for v in e) for e in edges):
                return r
    raise AssertionError("unreachable: the full vertex set is a cover")


def brute_degree(h, s):
    s = set(s)
    return sum(1 for e in h.edges if s <= set(h.edge_vertices(e)))


def brute_lwise(h, index):
    """l-wise density for a fixed index set, one degree count per tuple."""
    rest = 1
    for i in range(h.k):
        if i not in index:
            rest *= h.part_sizes[i]
    worst = None
    for t in product(*(range(h.part_sizes[i]) for i in index)):
        d = brute_degree(h, [VertexRef(i, o) for i, o in zip(index, t)])
        worst = d if worst is None else min(worst, d)
    return Fraction(worst, rest)


def covers(h, c):
    c = set(c)
    return all(any(v in c for v in h.edge_vertices(e)) for e in h.edges)


@st.composite
def hypergraphs(draw, min_k=1, max_k=3, max_size=3, normalized=False, min_edges=0):
    k = draw(st.integers(min_k, max_k))
    sizes = draw(st.lists(st.integers(1, max_size), min_size=k, max_size=k))
    if normalized:
        sizes.sort(reverse=True)
    transversals = list(product(*(range(s) for s in sizes)))
    edges = draw(st.lists(st.sampled_from(transversals), unique=True,
                          min_size=min(min_edges, len(transversals))))
    return KPartiteHypergraph(sizes, edges)


@st.composite
def vertex_subsets(draw, h):
    verts = h.vertices()
    return set(draw(st.lists(st.sampled_from(verts), unique=True))) if verts else set()
