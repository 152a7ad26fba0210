"""Instance generators.

Randomness comes from MT19937 (``random.Random``) used only through
``getrandbits``, whose output for an integer seed is fixed across platforms
and Python versions.  Bounded integers and subsets are derived here by
rejection sampling and Floyd's algorithm rather than by ``random.sample``,
whose internals are not a stability promise.
"""
from __future__ import annotations

import hashlib
import math
import random
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from . import fileformat
from .hypergraph import HypergraphError, KPartiteHypergraph

PRNG = "mt19937-getrandbits/floyd"


def _eps_str(eps: Fraction) -> str:
    return f"{eps.numerator}/{eps.denominator}"


def _randbelow(rng: random.Random, n: int) -> int:
    bits = n.bit_length()
    while True:
        r = rng.getrandbits(bits)
        if r < n:
            return r


def sample_indices(rng: random.Random, population: int, count: int) -> list:
    """``count`` distinct integers from ``range(population)``, sorted."""
    if not 0 <= count <= population:
        raise ValueError(f"cannot draw {count} distinct items from {population}")
    chosen = set()
    for j in range(population - count, population):
        t = _randbelow(rng, j + 1)
        chosen.add(j if t in chosen else t)
    return sorted(chosen)


def _decode(index: int, sizes: Sequence[int]) -> tuple:
    # mixed radix, first part most significant, so index order is lexicographic
    out = []
    for s in reversed(sizes):
        index, r = divmod(index, s)
        out.append(r)
    return tuple(reversed(out))


def tight_family(k: int, l: int, u: int) -> KPartiteHypergraph:
    """All parts of size ``l``; edges are the transversals whose last-part
    vertex is one of offsets ``0..u-1``.  Density u/l, minimum cover size u."""
    if k < 1 or l < 1 or not 1 <= u <= l:
        raise HypergraphError(f"tight family needs k >= 1, l >= 1, 1 <= u <= l (got k={k}, l={l}, u={u})")
    ranges = [range(l)] * (k - 1) + [range(u)]
    prov = {"generator": "tight_family", "params": {"k": k, "l": l, "u": u}}
    return KPartiteHypergraph([l] * k, product(*ranges), prov)


def _check_sizes(k, sizes, eps):
    sizes = [int(s) for s in sizes]
    if len(sizes) != k:
        raise HypergraphError(f"expected {k} part sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes) or sizes != sorted(sizes, reverse=True):
        raise HypergraphError(f"part sizes must be positive and non-increasing: {sizes}")
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise HypergraphError(f"eps must lie in (0, 1], got {eps}")
    return sizes, eps


def random_dense(k: int, sizes: Sequence[int], eps, seed: int) -> KPartiteHypergraph:
    """Exactly ceil(eps * prod(sizes)) distinct transversals, uniformly chosen."""
    sizes, eps = _check_sizes(k, sizes, eps)
    total = math.prod(sizes)
    count = math.ceil(eps * total)
    rng = random.Random(seed)
    edges = [_decode(i, sizes) for i in sample_indices(rng, total, count)]
    prov = {"generator": "random_dense", "prng": PRNG,
            "params": {"k": k, "sizes": sizes, "eps": _eps_str(eps), "seed": seed}}
    return KPartiteHypergraph(sizes, edges, prov)


def random_lwise_dense(k: int, sizes: Sequence[int], ell: int, eps, seed: int) -> KPartiteHypergraph:
    """ell-wise eps-dense with witness I = the first ``ell`` parts.

    Every transversal tuple over I gets ceil(eps * prod of the other sizes)
    distinct completions, drawn independently per tuple in lexicographic order.
    """
    sizes, eps = _check_sizes(k, sizes, eps)
    if not 1 <= ell <= k - 1:
        raise HypergraphError(f"ell must lie in [1, {k - 1}], got {ell}")
    head, tail = sizes[:ell], sizes[ell:]
    rest = math.prod(tail)
    count = math.ceil(eps * rest)
    rng = random.Random(seed)
    edges = []
    for s in product(*(range(x) for x in head)):
        edges.extend(s + _decode(i, tail) for i in sample_indices(rng, rest, count))
    prov = {"generator": "random_lwise", "prng": PRNG,
            "params": {"k": k, "sizes": sizes, "ell": ell, "eps": _eps_str(eps), "seed": seed}}
    return KPartiteHypergraph(sizes, edges, prov)


def planted_dense(k: int, sizes: Sequence[int], eps, seed: int) -> KPartiteHypergraph:
    """ceil(eps * prod(sizes)) distinct transversals, all meeting a planted set.

    The planted set grows one random vertex at a time until enough
    transversals meet it, so it is small and the minimum cover is usually
    well below the smallest part.  Edges are then drawn uniformly among the
    transversals that meet it.
    """
    sizes, eps = _check_sizes(k, sizes, eps)
    total = math.prod(sizes)
    count = math.ceil(eps * total)
    rng = random.Random(seed)
    planted = [set() for _ in sizes]
    while total - math.prod(s - len(p) for s, p in zip(sizes, planted)) < count:
        i = _randbelow(rng, k)
        free = [o for o in range(sizes[i]) if o not in planted[i]]
        if free:
            planted[i].add(free[_randbelow(rng, len(free))])
    hit = [t for t in product(*(range(s) for s in sizes))
           if any(o in planted[i] for i, o in enumerate(t))]
    edges = [hit[i] for i in sample_indices(rng, len(hit), count)]
    prov = {"generator": "planted_dense", "prng": PRNG,
            "params": {"k": k, "sizes": sizes, "eps": _eps_str(eps), "seed": seed}}
    return KPartiteHypergraph(sizes, edges, prov)


def padding_count(part_size: int, eps) -> Fraction:
    eps = Fraction(eps)
    return eps / (1 - eps) * part_size


def nearest_feasible_eps(part_size: int, eps) -> Fraction:
    """Closest eps' with an integral, positive padding count for this part size."""
    c = max(1, round(padding_count(part_size, eps)))
    return Fraction(c, part_size + c)


def source_hash(h: KPartiteHypergraph) -> str:
    return hashlib.sha256(fileformat.dumps(h.with_provenance(None)).encode()).hexdigest()


def pad_to_dense(h: KPartiteHypergraph, eps) -> KPartiteHypergraph:
    """Make a balanced instance eps-dense.

    Each part gains ``c = eps/(1-eps) * n/k`` new vertices (offsets after the
    old ones) and every transversal through a new vertex of the first part is
    added.  The result is balanced, contains the old edges unchanged, and has
    density at least c / (n/k + c) = eps.
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise HypergraphError(f"padding needs eps in (0, 1), got {eps}")
    if not h.balanced:
        raise HypergraphError(f"not balanced: part sizes {h.part_sizes}")
    s = h.part_sizes[0]
    c = padding_count(s, eps)
    if c.denominator != 1 or c < 1:
        raise HypergraphError(
            f"non-integral padding: eps/(1-eps) * n/k = {c}; nearest feasible eps is {nearest_feasible_eps(s, eps)}")
    c = int(c)
    size = s + c
    new = product(range(s, size), *([range(size)] * (h.k - 1)))
    prov = {"generator": "padded",
            "params": {"eps": _eps_str(eps), "source_sha256": source_hash(h), "source": h.provenance}}
    return KPartiteHypergraph([size] * h.k, list(h.edges) + list(new), prov)


def regenerate(provenance: dict, source: Optional[KPartiteHypergraph] = None) -> KPartiteHypergraph:
    """Rebuild an instance from its provenance record.

    Padded instances also need their source, which is checked against the
    recorded hash.
    """
    kind, p = provenance["generator"], provenance["params"]
    if kind == "tight_family":
        return tight_family(p["k"], p["l"], p["u"])
    if kind == "random_dense":
        return random_dense(p["k"], p["sizes"], Fraction(p["eps"]), p["seed"])
    if kind == "random_lwise":
        return random_lwise_dense(p["k"], p["sizes"], p["ell"], Fraction(p["eps"]), p["seed"])
    if kind == "planted_dense":
        return planted_dense(p["k"], p["sizes"], Fraction(p["eps"]), p["seed"])
    if kind == "padded":
        if source is None:
            source = regenerate(p["source"]) if p.get("source") else None
        if source is None or source_hash(source) != p["source_sha256"]:
            raise HypergraphError("padded instance needs its original source to regenerate")
        return pad_to_dense(source, Fraction(p["eps"]))
    raise HypergraphError(f"unknown generator {kind!r}")


def dense_corpus(ks=(2, 3, 4), eps_values=("1/4", "1/2", "3/4"), per_cell: int = 24,
                 max_size: int = 6, seed: int = 0, generator=None) -> list:
    """Seeded instances over a (k, eps) grid with random non-increasing part sizes."""
    generator = generator or random_dense
    rng = random.Random(seed)
    out = []
    for k in ks:
        for eps in eps_values:
            eps = Fraction(eps)
            for _ in range(per_cell):
                sizes = sorted((1 + _randbelow(rng, max_size) for _ in range(k)), reverse=True)
                out.append(generator(k, sizes, eps, rng.getrandbits(32)))
    return out
