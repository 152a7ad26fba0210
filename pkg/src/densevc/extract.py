"""Candidate extraction for dense k-partite hypergraphs.

``extract(H)`` returns a polynomial-size family of vertex sets with the
property that one of them lies inside some minimum vertex cover and has at
least ``density(H) * |V_k|`` vertices, V_k being the smallest part.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .hypergraph import (
    HypergraphError,
    KPartiteHypergraph,
    VertexRef,
    induced,
    map_back,
    normalize,
    remove_hit_edges,
    vertex_degrees,
)


@dataclass(frozen=True)
class CandidateCollection:
    candidates: tuple  # frozensets of VertexRef, canonical order
    traces: dict = field(default_factory=dict, compare=False)  # candidate -> prefix indices

    def __len__(self):
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)

    def __contains__(self, s):
        return frozenset(s) in self.traces


def canonical_key(s) -> tuple:
    return (len(s), sorted(s))


def heaviest_prefix(h: KPartiteHypergraph, p: int) -> list:
    """The ``p`` highest-degree vertices of the last part, ties by offset."""
    last = h.k - 1
    if p < 0 or p > h.part_sizes[last]:
        raise HypergraphError(f"prefix too long: p={p} exceeds |V_k|={h.part_sizes[last]}")
    deg = vertex_degrees(h, last)
    order = sorted(range(len(deg)), key=lambda o: (-deg[o], o))
    return [VertexRef(last, o) for o in order[:p]]


def prefix_length(h: KPartiteHypergraph) -> int:
    if not h.edges:
        return 0
    # nonzero because an edge exists, so no part is empty
    rest = math.prod(h.part_sizes[:-1])
    return -(-h.m // rest)


def _extract(h: KPartiteHypergraph) -> dict:
    # candidate -> trace, in h's own coordinates
    if h.k == 1:
        return {frozenset(VertexRef(0, e[0]) for e in h.edges): ()}
    prefix = heaviest_prefix(h, prefix_length(h))
    out = {frozenset(prefix): ()}
    for i, v in enumerate(prefix):
        chosen = frozenset(prefix[:i])
        sub = induced(h, v)
        g, perm = normalize(sub.graph)
        for s, trace in _extract(g).items():
            cand = chosen | sub.lift(map_back(s, perm))
            out.setdefault(cand, (i,) + trace)
    return out


def extract(h: KPartiteHypergraph) -> CandidateCollection:
    """Run the recursive extraction on a normalized instance.

    Each level takes the ``p = ceil(|E| / prod_{l<k} |V_l|)`` heaviest vertices
    of the smallest part, then for every ``i`` assumes ``v_1..v_{i-1}`` are in
    the cover and ``v_i`` is not, and recurses on the ``v_i``-induced
    hypergraph, re-normalized so its own smallest part is last.
    """
    if not h.normalized:
        raise HypergraphError("extract needs a normalized instance (non-increasing part sizes)")
    found = _extract(h)
    order = sorted(found, key=canonical_key)
    return CandidateCollection(tuple(order), {c: found[c] for c in order})


def best_extension(h: KPartiteHypergraph, candidates, oracle) -> tuple:
    """The candidate minimizing ``|S| + oracle(H_S)``, with that minimum.

    Ties go to the smaller, then canonically first, candidate.  Candidates
    that cannot beat the running minimum even with an empty residual are
    skipped without calling the oracle.
    """
    best, best_total = None, None
    for s in sorted(candidates, key=canonical_key):
        if best_total is not None and len(s) >= best_total:
            break
        total = len(s) + oracle(remove_hit_edges(h, s).graph)
        if best_total is None or total < best_total:
            best, best_total = frozenset(s), total
    return best, best_total
