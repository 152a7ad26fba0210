"""The HVC text format and its JSON mirror.

::

    HVC 1
    # provenance: {"generator": "tight_family", ...}
    k m
    s_1 ... s_k
    o_1 ... o_k        (m edge lines, 0-based offsets in part order)

``#`` starts a comment line and blank lines are ignored.  The text format is
the interchange source of truth; JSON is a convenience export.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .hypergraph import HypergraphError, KPartiteHypergraph

MAGIC = "HVC"
VERSION = 1
PROVENANCE_PREFIX = "# provenance:"


class FormatError(ValueError):
    pass


def dumps(h: KPartiteHypergraph) -> str:
    lines = [f"{MAGIC} {VERSION}"]
    if h.provenance is not None:
        lines.append(f"{PROVENANCE_PREFIX} {json.dumps(h.provenance, sort_keys=True)}")
    lines.append(f"{h.k} {h.m}")
    lines.append(" ".join(map(str, h.part_sizes)))
    lines.extend(" ".join(map(str, e)) for e in h.edges)
    return "\n".join(lines) + "\n"


def loads(text: str) -> KPartiteHypergraph:
    provenance = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith(PROVENANCE_PREFIX):
            try:
                provenance = json.loads(line[len(PROVENANCE_PREFIX):])
            except json.JSONDecodeError as exc:
                raise FormatError(f"line {lineno}: bad provenance record: {exc}") from None
            continue
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))

    if not rows or rows[0][1] != [MAGIC, str(VERSION)]:
        raise FormatError(f"missing '{MAGIC} {VERSION}' header")
    if len(rows) < 3:
        raise FormatError("truncated file: expected arity line and part sizes")

    def ints(lineno, tokens):
        try:
            return [int(t) for t in tokens]
        except ValueError:
            raise FormatError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None

    lineno, head = rows[1]
    head = ints(lineno, head)
    if len(head) != 2:
        raise FormatError(f"line {lineno}: expected 'k m'")
    k, m = head
    if k < 1 or m < 0:
        raise FormatError(f"line {lineno}: invalid k={k} or m={m}")
    lineno, sizes = rows[2]
    sizes = ints(lineno, sizes)
    if len(sizes) != k:
        raise FormatError(f"line {lineno}: expected {k} part sizes, got {len(sizes)}")
    edge_rows = rows[3:]
    if len(edge_rows) != m:
        raise FormatError(f"edge count mismatch: header says {m}, found {len(edge_rows)}")

    edges, seen = [], set()
    for lineno, tokens in edge_rows:
        e = tuple(ints(lineno, tokens))
        if len(e) != k:
            raise FormatError(f"line {lineno}: edge has {len(e)} offsets, expected {k}")
        for i, o in enumerate(e):
            if not 0 <= o < sizes[i]:
                raise FormatError(f"line {lineno}: offset overflow ({o} in part {i} of size {sizes[i]})")
        if e in seen:
            raise FormatError(f"line {lineno}: duplicate edge {' '.join(map(str, e))}")
        seen.add(e)
        edges.append(e)
    try:
        return KPartiteHypergraph(sizes, edges, provenance, strict=True)
    except HypergraphError as exc:
        raise FormatError(str(exc)) from None


def read(path) -> KPartiteHypergraph:
    with open(path, "rb") as f:
        data = f.read()
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError:
        raise FormatError(f"{path}: not an ASCII file") from None
    return loads(text)


def write(h: KPartiteHypergraph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(dumps(h))


def rational(q: Fraction) -> dict:
    """JSON form of an exact ratio; ``float`` is for display only."""
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator, "float": float(q)}


def to_json(h: KPartiteHypergraph) -> dict:
    return {
        "format": f"{MAGIC} {VERSION}",
        "k": h.k,
        "m": h.m,
        "part_sizes": list(h.part_sizes),
        "edges": [list(e) for e in h.edges],
        "provenance": h.provenance,
    }


def from_json(data: dict) -> KPartiteHypergraph:
    return KPartiteHypergraph(data["part_sizes"], data["edges"], data.get("provenance"), strict=True)
