"""Vertex cover on dense k-partite k-uniform hypergraphs."""
from fractions import Fraction

from .approx import ApproxReport, approx_dense, guarantee, guarantee_general
from .extract import CandidateCollection, best_extension, extract, heaviest_prefix
from .fileformat import FormatError
from .generators import pad_to_dense, planted_dense, random_dense, random_lwise_dense, tight_family
from .hypergraph import (
    HypergraphError,
    KPartiteHypergraph,
    SubHypergraph,
    VertexRef,
    degree,
    density,
    induced,
    is_vertex_cover,
    lwise_density,
    neighborhood,
    normalize,
    remove_hit_edges,
)
from .lp import FractionalCover, lp_relax, round_threshold
from .solvers import BudgetExceeded, Cover, Method, baseline_cover, exact_cover, tau

Rational = Fraction

__version__ = "0.1.0"
