"""k-partite k-uniform hypergraphs.

Vertices are addressed as ``(part, offset)`` pairs.  An edge is stored as a
tuple of ``k`` offsets where the i-th entry indexes into part ``i``; the
one-vertex-per-part invariant is therefore structural.  Instances are
immutable and hashable, which lets solvers memoize on them.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, NamedTuple, Optional, Sequence


class HypergraphError(ValueError):
    """Raised for malformed instances or invalid arguments."""


class VertexRef(NamedTuple):
    part: int
    offset: int


Edge = tuple  # tuple[int, ...] of length k


@dataclass(frozen=True)
class KPartiteHypergraph:
    part_sizes: tuple
    edges: tuple
    provenance: Optional[dict] = field(default=None, compare=False, repr=False)

    # Duplicate edges are merged unless ``strict`` is set.
    def __init__(self, part_sizes: Sequence[int], edges: Iterable[Sequence[int]] = (),
                 provenance: Optional[dict] = None, *, strict: bool = False):
        sizes = tuple(int(s) for s in part_sizes)
        if not sizes:
            raise HypergraphError("k must be at least 1")
        if any(s < 0 for s in sizes):
            raise HypergraphError(f"negative part size in {sizes}")
        k = len(sizes)
        seen = set()
        for e in edges:
            e = tuple(int(o) for o in e)
            if len(e) != k:
                raise HypergraphError(f"edge {e} does not have exactly {k} vertices")
            for i, o in enumerate(e):
                if not 0 <= o < sizes[i]:
                    raise HypergraphError(f"offset overflow: edge {e}, part {i} has size {sizes[i]}")
            if strict and e in seen:
                raise HypergraphError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "part_sizes", sizes)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "provenance", provenance)

    @property
    def k(self) -> int:
        return len(self.part_sizes)

    @property
    def n(self) -> int:
        return sum(self.part_sizes)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def normalized(self) -> bool:
        s = self.part_sizes
        return all(s[i] >= s[i + 1] for i in range(len(s) - 1))

    @property
    def balanced(self) -> bool:
        return len(set(self.part_sizes)) == 1

    def vertices(self) -> list:
        return [VertexRef(i, o) for i, s in enumerate(self.part_sizes) for o in range(s)]

    def part(self, i: int) -> list:
        return [VertexRef(i, o) for o in range(self.part_sizes[i])]

    def edge_vertices(self, e: Edge) -> tuple:
        return tuple(VertexRef(i, o) for i, o in enumerate(e))

    def with_provenance(self, provenance: Optional[dict]) -> "KPartiteHypergraph":
        out = object.__new__(KPartiteHypergraph)
        object.__setattr__(out, "part_sizes", self.part_sizes)
        object.__setattr__(out, "edges", self.edges)
        object.__setattr__(out, "provenance", provenance)
        return out

    def check_vertex(self, v: VertexRef) -> None:
        if not (0 <= v[0] < self.k and 0 <= v[1] < self.part_sizes[v[0]]):
            raise HypergraphError(f"vertex {tuple(v)} is not in the hypergraph")


def complete(part_sizes: Sequence[int]) -> KPartiteHypergraph:
    """All transversals of the given parts."""
    return KPartiteHypergraph(part_sizes, product(*(range(s) for s in part_sizes)))


def density(h: KPartiteHypergraph) -> Fraction:
    total = math.prod(h.part_sizes)
    if total == 0:
        return Fraction(0)
    return Fraction(h.m, total)


def lwise_density(h: KPartiteHypergraph, ell: int, index: Optional[Sequence[int]] = None) -> tuple:
    """Best index set ``I`` of size ``ell`` and the largest eps for which
    every transversal tuple over ``I`` has degree >= eps * prod_{i not in I} |V_i|.

    Pass ``index`` to evaluate one fixed ``I`` instead of maximizing.  Work
    is sum over the candidate I of prod_{i in I} |V_i|; ties between index
    sets go to the lexicographically first.
    """
    k = h.k
    if not 1 <= ell <= k - 1:
        raise HypergraphError(f"arity out of range: ell={ell} not in [1, {k - 1}]")
    if index is None:
        candidates = combinations(range(k), ell)
    else:
        index = tuple(sorted(index))
        if len(index) != ell or len(set(index)) != ell or not all(0 <= i < k for i in index):
            raise HypergraphError(f"index set {index} is not an {ell}-subset of parts")
        candidates = [index]
    best_index, best = None, Fraction(-1)
    for index in candidates:
        rest = math.prod(h.part_sizes[i] for i in range(k) if i not in index)
        n_tuples = math.prod(h.part_sizes[i] for i in index)
        counts = Counter(tuple(e[i] for i in index) for e in h.edges)
        if n_tuples == 0 or rest == 0 or len(counts) < n_tuples:
            # some tuple has degree 0
            eps = Fraction(0)
        else:
            eps = Fraction(min(counts.values()), rest)
        if eps > best:
            best_index, best = index, eps
    return best_index, best


def _validate_subset(h: KPartiteHypergraph, s: Iterable[VertexRef]) -> dict:
    by_part = {}
    for v in s:
        v = VertexRef(*v)
        h.check_vertex(v)
        if v.part in by_part and by_part[v.part] != v.offset:
            raise HypergraphError(f"malformed subset: two vertices in part {v.part}")
        by_part[v.part] = v.offset
    return by_part


def degree(h: KPartiteHypergraph, s: Iterable[VertexRef]) -> int:
    by_part = _validate_subset(h, s)
    if not by_part:
        raise HypergraphError("degree of the empty set is not defined")
    return sum(1 for e in h.edges if all(e[i] == o for i, o in by_part.items()))


def vertex_degrees(h: KPartiteHypergraph, part: int) -> list:
    deg = [0] * h.part_sizes[part]
    for e in h.edges:
        deg[e[part]] += 1
    return deg


def neighborhood(h: KPartiteHypergraph, v: VertexRef) -> set:
    v = VertexRef(*v)
    h.check_vertex(v)
    out = set()
    for e in h.edges:
        if e[v.part] == v.offset:
            out.update(VertexRef(i, o) for i, o in enumerate(e) if i != v.part)
    return out


@dataclass(frozen=True)
class SubHypergraph:
    """A derived instance together with the map back to its parent.

    ``origin[i][j]`` is the parent vertex that became offset ``j`` of part ``i``.
    """

    graph: KPartiteHypergraph
    origin: tuple

    def lift(self, vertices: Iterable[VertexRef]) -> frozenset:
        return frozenset(self.origin[p][o] for p, o in vertices)


def induced(h: KPartiteHypergraph, v: VertexRef) -> SubHypergraph:
    """The v-induced (k-1)-partite hypergraph H(v).

    Part ``i`` of the result is ``V_i`` intersected with the neighborhood of
    ``v`` (the part containing ``v`` is dropped).  Isolated ``v`` yields empty
    parts and no edges.
    """
    v = VertexRef(*v)
    h.check_vertex(v)
    if h.k < 2:
        raise HypergraphError("arity too small: induced hypergraph needs k >= 2")
    others = [i for i in range(h.k) if i != v.part]
    through = [e for e in h.edges if e[v.part] == v.offset]
    kept = [sorted({e[i] for e in through}) for i in others]
    index = [{o: j for j, o in enumerate(offs)} for offs in kept]
    edges = [tuple(index[j][e[i]] for j, i in enumerate(others)) for e in through]
    origin = tuple(tuple(VertexRef(i, o) for o in kept[j]) for j, i in enumerate(others))
    return SubHypergraph(KPartiteHypergraph([len(x) for x in kept], edges), origin)


def normalize(h: KPartiteHypergraph) -> tuple:
    """Reorder parts so sizes are non-increasing (stable).

    Returns ``(h2, perm)`` with ``perm[new_part] = old_part``.
    """
    perm = tuple(sorted(range(h.k), key=lambda i: -h.part_sizes[i]))
    if perm == tuple(range(h.k)):
        return h, perm
    sizes = [h.part_sizes[i] for i in perm]
    edges = [tuple(e[i] for i in perm) for e in h.edges]
    return KPartiteHypergraph(sizes, edges, h.provenance), perm


def map_back(vertices: Iterable[VertexRef], perm: Sequence[int]) -> frozenset:
    """Translate vertices of a normalized instance to the original part order."""
    return frozenset(VertexRef(perm[p], o) for p, o in vertices)


def remove_hit_edges(h: KPartiteHypergraph, s: Iterable[VertexRef]) -> SubHypergraph:
    """H_S: drop the vertices of ``s`` and every edge meeting ``s``."""
    removed = [set() for _ in range(h.k)]
    for v in s:
        h.check_vertex(v)
        removed[v[0]].add(v[1])
    kept = [[o for o in range(size) if o not in removed[i]] for i, size in enumerate(h.part_sizes)]
    index = [{o: j for j, o in enumerate(offs)} for offs in kept]
    edges = [tuple(index[i][o] for i, o in enumerate(e)) for e in h.edges
             if not any(o in removed[i] for i, o in enumerate(e))]
    origin = tuple(tuple(VertexRef(i, o) for o in offs) for i, offs in enumerate(kept))
    return SubHypergraph(KPartiteHypergraph([len(x) for x in kept], edges), origin)


def is_vertex_cover(h: KPartiteHypergraph, c: Iterable[VertexRef]) -> bool:
    chosen = [set() for _ in range(h.k)]
    for v in c:
        h.check_vertex(v)
        chosen[v[0]].add(v[1])
    return all(any(o in chosen[i] for i, o in enumerate(e)) for e in h.edges)
