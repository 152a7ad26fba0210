"""Approximation for vertex cover on eps-dense k-partite k-uniform hypergraphs.

Every extracted candidate S is completed by a baseline cover of the residual
H_S; the smallest completion (or the smallest part, whichever is smaller)
is returned.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .extract import canonical_key, extract
from .hypergraph import (
    HypergraphError,
    KPartiteHypergraph,
    density,
    map_back,
    normalize,
    remove_hit_edges,
)
from .solvers import Cover, Method, baseline_cover, baseline_factor


def _check_eps(eps) -> Fraction:
    eps = Fraction(eps)
    if not 0 <= eps <= 1:
        raise ValueError(f"density must lie in [0, 1], got {eps}")
    return eps


def guarantee(k: int, eps) -> Fraction:
    """k / (2 + (k - 2) eps)."""
    if k < 2:
        raise ValueError(f"guarantee needs k >= 2, got {k}")
    eps = _check_eps(eps)
    return Fraction(k) / (2 + (k - 2) * eps)


def guarantee_general(k: int, eps, rho) -> Fraction:
    """Ratio when the residual is solved within factor ``rho``: rho / (1 + (rho - 1) eps).

    With rho = k/2 this is ``guarantee(k, eps)``.  ``k`` only has to be a valid
    arity; the bound itself depends on rho and eps.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    eps = _check_eps(eps)
    rho = Fraction(rho)
    if rho < 1:
        raise ValueError(f"baseline factor must be >= 1, got {rho}")
    return rho / (1 + (rho - 1) * eps)


@dataclass(frozen=True)
class ApproxReport:
    chosen: Cover
    density: Fraction
    candidate_count: int
    per_candidate: tuple  # (|S|, residual cover size) in candidate order
    guarantee: Fraction
    baseline: Method
    baseline_factor: Optional[Fraction]
    seed_size: int  # |V_k|


def approx_dense(h: KPartiteHypergraph, baseline: Method = Method.EXACT,
                 budget: Optional[int] = None) -> ApproxReport:
    """Cover ``h`` via extraction plus a baseline cover of each residual.

    Non-normalized inputs are normalized first; the returned cover is in the
    caller's part order.  k = 2 runs with a warning since the analysis is
    stated for k >= 3.
    """
    if h.k < 2:
        raise HypergraphError("approx_dense needs k >= 2")
    if h.k == 2:
        warnings.warn("k = 2 is outside the regime the approximation analysis covers", stacklevel=2)
    baseline = Method(baseline)
    g, perm = normalize(h)
    eps = density(g)

    last = g.k - 1
    best = frozenset(g.part(last))
    collection = extract(g)
    memo = {}
    per_candidate = []
    for s in collection:
        sub = remove_hit_edges(g, s)
        if sub.graph not in memo:
            memo[sub.graph] = baseline_cover(sub.graph, baseline, budget).vertices
        rest = memo[sub.graph]
        per_candidate.append((len(s), len(rest)))
        full = s | sub.lift(rest)
        if canonical_key(full) < canonical_key(best):
            best = full

    rho = baseline_factor(baseline, g.k)
    ratio = guarantee_general(g.k, eps, rho) if rho is not None else None
    chosen = Cover(map_back(best, perm), Method.APPROX_DENSE, ratio)
    return ApproxReport(chosen, eps, len(collection), tuple(per_candidate),
                        guarantee(g.k, eps), baseline, rho, g.part_sizes[last])
