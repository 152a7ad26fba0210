"""Cover subroutines: exact branch-and-bound, LP rounding and trivial baselines."""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .hypergraph import KPartiteHypergraph, VertexRef, is_vertex_cover

DEFAULT_NODE_BUDGET = 10**7
BUDGET_ENV = "HVC_NODE_BUDGET"


class BudgetExceeded(RuntimeError):
    """The exact oracle gave up; the instance is too large for it."""


class Method(str, enum.Enum):
    EXACT = "exact"
    LP_THRESHOLD = "lp_threshold"
    APPROX_DENSE = "approx_dense"
    TRIVIAL_PART = "trivial_part"


@dataclass(frozen=True)
class Cover:
    vertices: frozenset
    method: Method
    certified_ratio: Optional[Fraction] = None

    @property
    def size(self) -> int:
        return len(self.vertices)

    def sorted(self) -> list:
        return sorted(self.vertices)


def node_budget() -> int:
    value = os.environ.get(BUDGET_ENV)
    return int(value) if value else DEFAULT_NODE_BUDGET


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def _lower_bound(edges: list) -> int:
    # Disjoint edges each need their own vertex.
    used = packing = 0
    for f in edges:
        if not f & used:
            used |= f
            packing += 1
    # No vertex covers more than the max degree.  On an unreduced instance
    # this dominates the density bound eps * |V_k|.
    deg = {}
    for f in edges:
        for b in _bits(f):
            deg[b] = deg.get(b, 0) + 1
    by_degree = -(-len(edges) // max(deg.values()))
    return max(packing, by_degree)


def _greedy(edges: list) -> int:
    cover = 0
    while edges:
        deg = {}
        for f in edges:
            for b in _bits(f):
                deg[b] = deg.get(b, 0) + 1
        best = max(sorted(deg), key=lambda b: deg[b])
        cover |= best
        edges = [f for f in edges if not f & best]
    return cover


def _branch_and_bound(edges: list, budget: int) -> int:
    incumbent = _greedy(edges)
    best = [bin(incumbent).count("1"), incumbent]
    nodes = 0

    def visit(edges, chosen, size):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"exact cover exceeded the node budget of {budget}")
        if not edges:
            if size < best[0]:
                best[0], best[1] = size, chosen
            return
        if size + _lower_bound(edges) >= best[0]:
            return
        # Shortest residual edge, lowest index on ties.  Child j takes the
        # j-th vertex and excludes the ones before it.
        pivot = min(edges, key=lambda f: bin(f).count("1"))
        excluded = 0
        for b in _bits(pivot):
            rest = []
            for f in edges:
                if f & b:
                    continue
                g = f & ~excluded
                if not g:
                    break
                rest.append(g)
            else:
                visit(rest, chosen | b, size + 1)
            excluded |= b

    visit(edges, 0, 0)
    return best[1]


def _global_ids(h: KPartiteHypergraph) -> list:
    base, acc = [], 0
    for s in h.part_sizes:
        base.append(acc)
        acc += s
    return base


@lru_cache(maxsize=4096)
def _exact_vertices(h: KPartiteHypergraph, budget: int) -> frozenset:
    if not h.edges:
        return frozenset()
    base = _global_ids(h)
    masks = [sum(1 << (base[i] + o) for i, o in enumerate(e)) for e in h.edges]
    cover = _branch_and_bound(masks, budget)
    owner = [VertexRef(i, o) for i, s in enumerate(h.part_sizes) for o in range(s)]
    return frozenset(owner[b.bit_length() - 1] for b in _bits(cover))


def exact_cover(h: KPartiteHypergraph, budget: Optional[int] = None) -> Cover:
    """A minimum vertex cover.  Raises BudgetExceeded past ``budget`` nodes."""
    budget = node_budget() if budget is None else budget
    return Cover(_exact_vertices(h, budget), Method.EXACT, Fraction(1))


def tau(h: KPartiteHypergraph, budget: Optional[int] = None) -> int:
    return exact_cover(h, budget).size


def smallest_part(h: KPartiteHypergraph) -> int:
    # ties go to the later part, so a normalized instance yields V_k
    return min(reversed(range(h.k)), key=lambda i: h.part_sizes[i])


def trivial_cover(h: KPartiteHypergraph) -> Cover:
    """The smallest part.  Edgeless instances get the empty cover."""
    if not h.edges:
        return Cover(frozenset(), Method.TRIVIAL_PART)
    return Cover(frozenset(h.part(smallest_part(h))), Method.TRIVIAL_PART)


BASELINES = (Method.EXACT, Method.LP_THRESHOLD, Method.TRIVIAL_PART)


def baseline_factor(strategy: Method, k: int) -> Optional[Fraction]:
    strategy = Method(strategy)
    if strategy is Method.EXACT:
        return Fraction(1)
    if strategy is Method.LP_THRESHOLD:
        return Fraction(k)
    return None


def baseline_cover(h: KPartiteHypergraph, strategy: Method = Method.EXACT,
                   budget: Optional[int] = None) -> Cover:
    from .lp import lp_relax, round_threshold

    strategy = Method(strategy)
    if strategy is Method.EXACT:
        return exact_cover(h, budget)
    if strategy is Method.LP_THRESHOLD:
        return round_threshold(h, lp_relax(h))
    if strategy is Method.TRIVIAL_PART:
        return trivial_cover(h)
    raise ValueError(f"unknown baseline strategy {strategy!r}")


def check_cover(h: KPartiteHypergraph, cover: Cover) -> Cover:
    if not is_vertex_cover(h, cover.vertices):
        raise AssertionError(f"{cover.method.value} produced a non-cover")
    return cover
