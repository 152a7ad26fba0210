"""Exact LP relaxation of vertex cover and threshold rounding.

The relaxation  min sum x_v  s.t.  sum_{v in e} x_v >= 1,  x >= 0  is solved
through its dual, the fractional edge packing

    max sum y_e  s.t.  sum_{e ni v} y_e <= 1,  y >= 0,

with a revised simplex over ``Fraction``.  The dual starts feasible at y = 0,
so no phase one is needed, and the basis has one row per non-isolated vertex
no matter how many edges there are.  The simplex multipliers at the optimal
basis are an optimal basic solution of the covering LP.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hypergraph import KPartiteHypergraph
from .solvers import Cover, Method

ZERO, ONE = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class FractionalCover:
    values: dict  # VertexRef -> Fraction
    objective: Fraction
    packing: tuple = ()  # optimal y_e in edge order; certifies optimality

    def is_feasible(self, h: KPartiteHypergraph) -> bool:
        return all(x >= 0 for x in self.values.values()) and all(
            sum(self.values[v] for v in h.edge_vertices(e)) >= 1 for e in h.edges)


def _simplex(cols: list, n_rows: int):
    """Bland-rule revised simplex for  max 1.y  s.t.  A y <= 1, y >= 0.

    ``cols[j]`` lists the rows where column j has a one.  Returns the row
    multipliers and the primal y.
    """
    m = len(cols)
    basis = [m + i for i in range(n_rows)]  # slack i has id m + i
    binv = [[ONE if i == j else ZERO for j in range(n_rows)] for i in range(n_rows)]
    xb = [ONE] * n_rows

    while True:
        # multipliers pi = c_B B^-1; only structural columns have cost 1
        pi = [ZERO] * n_rows
        for i, var in enumerate(basis):
            if var < m:
                row = binv[i]
                for j in range(n_rows):
                    if row[j]:
                        pi[j] += row[j]

        entering = None
        for j, rows in enumerate(cols):
            if sum(pi[r] for r in rows) < 1:
                entering = j
                break
        if entering is None:
            for i in range(n_rows):
                if pi[i] < 0:
                    entering = m + i
                    break
        if entering is None:
            y = [ZERO] * m
            for i, var in enumerate(basis):
                if var < m:
                    y[var] = xb[i]
            return pi, y

        if entering < m:
            d = [sum(binv[i][r] for r in cols[entering]) for i in range(n_rows)]
        else:
            d = [binv[i][entering - m] for i in range(n_rows)]

        leave, best = None, None
        for i in range(n_rows):
            if d[i] > 0:
                ratio = xb[i] / d[i]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        # the packing polytope is bounded, so some row always blocks
        assert leave is not None

        piv = d[leave]
        prow = [v / piv for v in binv[leave]]
        binv[leave] = prow
        xb[leave] = xb[leave] / piv
        for i in range(n_rows):
            if i != leave and d[i]:
                f = d[i]
                row = binv[i]
                binv[i] = [a - f * b if b else a for a, b in zip(row, prow)]
                xb[i] -= f * xb[leave]
        basis[leave] = entering


def lp_relax(h: KPartiteHypergraph) -> FractionalCover:
    values = {v: ZERO for v in h.vertices()}
    if not h.edges:
        return FractionalCover(values, ZERO, ())
    touched = sorted({v for e in h.edges for v in h.edge_vertices(e)})
    row = {v: i for i, v in enumerate(touched)}
    cols = [[row[v] for v in h.edge_vertices(e)] for e in h.edges]
    pi, y = _simplex(cols, len(touched))
    for v, i in row.items():
        values[v] = pi[i]
    return FractionalCover(values, sum(pi, ZERO), tuple(y))


def round_threshold(h: KPartiteHypergraph, x: FractionalCover) -> Cover:
    """Keep every vertex with x_v >= 1/k; some coordinate of each edge qualifies."""
    cut = Fraction(1, h.k)
    chosen = frozenset(v for v, val in x.values.items() if val >= cut)
    return Cover(chosen, Method.LP_THRESHOLD, Fraction(h.k))
