"""Benchmark harness: run cover methods over a suite and tabulate ratios.

A suite is a JSON document::

    {
      "version": 1,
      "budget": 1000000,
      "methods": ["exact", "approx-dense:exact", "approx-dense:lp-threshold"],
      "instances": [
        {"file": "h.hvc"},
        {"generator": "tight", "k": [2, 3], "l": [1, 2, 3]},
        {"generator": "random", "k": 3, "sizes": [[3, 3, 3]], "epsilon": ["1/2"], "seed": [0, 1]},
        {"generator": "lwise", "k": 3, "sizes": [[3, 3, 3]], "ell": 1, "epsilon": "1/2", "seed": 0},
        {"generator": "planted", "k": 3, "sizes": [[4, 4, 4]], "epsilon": "1/4", "seed": [0, 1]},
        {"generator": "corpus", "ks": [2, 3], "per_cell": 4, "seed": 0, "planted": false}
      ]
    }

Scalar parameters and lists are both accepted; lists expand as a grid.  For
``tight``, omitting ``u`` means every u in 1..l.  Records come out in suite
order, then method order, so the report bytes depend only on the suite.
"""
from __future__ import annotations

import csv
import io
import json
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Optional

from . import bounds, fileformat, generators
from .approx import approx_dense, guarantee
from .hypergraph import HypergraphError, KPartiteHypergraph, density
from .lp import lp_relax, round_threshold
from .solvers import BudgetExceeded, Method, exact_cover, trivial_cover

SUITE_VERSION = 1

METHODS = {
    "exact": None,
    "lp-threshold": None,
    "trivial-part": None,
    "approx-dense:exact": Method.EXACT,
    "approx-dense:lp-threshold": Method.LP_THRESHOLD,
    "approx-dense:trivial-part": Method.TRIVIAL_PART,
}
DEFAULT_METHODS = ["exact", "lp-threshold", "approx-dense:exact", "approx-dense:lp-threshold"]


class SuiteError(ValueError):
    pass


@dataclass
class BenchRecord:
    instance: str
    provenance: Optional[dict]
    k: int
    eps: Fraction
    n: int
    m: int
    smallest_part: int
    method: str
    status: str = "ok"
    tau: Optional[int] = None
    size: Optional[int] = None
    ratio: Optional[Fraction] = None
    certified: Optional[Fraction] = None
    lp_objective: Optional[Fraction] = None
    candidates: Optional[int] = None
    guarantee: Optional[Fraction] = None
    ugc: Optional[Fraction] = None
    conjecture: Optional[Fraction] = None
    np: Optional[Fraction] = None
    seconds: dict = field(default_factory=dict)

    @property
    def within_certified(self) -> Optional[bool]:
        if self.ratio is None or self.certified is None:
            return None
        return self.ratio <= self.certified


def _grid(entry: dict, keys: list) -> list:
    values = []
    for key in keys:
        v = entry.get(key)
        values.append(v if isinstance(v, list) else [v])
    return [dict(zip(keys, combo)) for combo in product(*values)]


def _sizes_grid(entry: dict) -> list:
    sizes = entry.get("sizes")
    if sizes and not isinstance(sizes[0], list):
        sizes = [sizes]
    return sizes


def expand_instances(suite: dict, base: Path = Path(".")) -> list:
    """(label, instance) pairs in suite order."""
    out = []
    for entry in suite.get("instances", []):
        if "file" in entry:
            path = base / entry["file"]
            out.append((entry["file"], fileformat.read(path)))
            continue
        kind = entry.get("generator")
        if kind == "tight":
            for p in _grid(entry, ["k", "l"]):
                us = entry.get("u")
                us = range(1, p["l"] + 1) if us is None else (us if isinstance(us, list) else [us])
                out.extend((None, generators.tight_family(p["k"], p["l"], u)) for u in us)
        elif kind in ("random", "planted"):
            gen = generators.random_dense if kind == "random" else generators.planted_dense
            for p in _grid({**entry, "sizes": _sizes_grid(entry)}, ["k", "sizes", "epsilon", "seed"]):
                out.append((None, gen(p["k"], p["sizes"], Fraction(p["epsilon"]), p["seed"])))
        elif kind == "lwise":
            for p in _grid({**entry, "sizes": _sizes_grid(entry)}, ["k", "sizes", "ell", "epsilon", "seed"]):
                out.append((None, generators.random_lwise_dense(
                    p["k"], p["sizes"], p["ell"], Fraction(p["epsilon"]), p["seed"])))
        elif kind == "corpus":
            gen = generators.planted_dense if entry.get("planted") else generators.random_dense
            corpus = generators.dense_corpus(
                ks=tuple(entry.get("ks", (2, 3, 4))),
                eps_values=tuple(entry.get("eps_values", ("1/4", "1/2", "3/4"))),
                per_cell=entry.get("per_cell", 24), max_size=entry.get("max_size", 6),
                seed=entry.get("seed", 0), generator=gen)
            out.extend((None, h) for h in corpus)
        else:
            raise SuiteError(f"unknown instance entry {entry!r}")
    return [(label or json.dumps(h.provenance, sort_keys=True), h) for label, h in out]


def _factors(rec: BenchRecord) -> None:
    k, eps = rec.k, rec.eps
    if k >= 2:
        rec.guarantee = guarantee(k, eps)
    if k >= 3:
        rec.ugc = bounds.ugc_factor(k, eps)
        rec.conjecture = bounds.conjecture_factor(k, eps)
    if k >= 4:
        rec.np = bounds.np_factor(k, eps)


def run_method(h: KPartiteHypergraph, method: str, budget: Optional[int]):
    """(cover, lp objective, candidate count) for one method."""
    if method == "exact":
        return exact_cover(h, budget), None, None
    if method == "lp-threshold":
        x = lp_relax(h)
        return round_threshold(h, x), x.objective, None
    if method == "trivial-part":
        return trivial_cover(h), None, None
    if method in METHODS:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            report = approx_dense(h, METHODS[method], budget)
        return report.chosen, None, report.candidate_count
    raise SuiteError(f"unknown method {method!r}")


def bench(suite: dict, base: Path = Path("."), timing: bool = False) -> list:
    if suite.get("version", SUITE_VERSION) != SUITE_VERSION:
        raise SuiteError(f"unsupported suite version {suite.get('version')}")
    methods = suite.get("methods", DEFAULT_METHODS)
    for method in methods:
        if method not in METHODS:
            raise SuiteError(f"unknown method {method!r}")
    budget = suite.get("budget")
    records = []
    for label, h in expand_instances(suite, base):
        eps = density(h)
        opt = None
        try:
            t0 = time.perf_counter()
            opt = exact_cover(h, budget).size
            tau_time = time.perf_counter() - t0
        except BudgetExceeded:
            tau_time = None
        for method in methods:
            rec = BenchRecord(label, h.provenance, h.k, eps, h.n, h.m,
                              min(h.part_sizes), method, tau=opt)
            _factors(rec)
            t0 = time.perf_counter()
            try:
                cover, lp_obj, count = run_method(h, method, budget)
            except BudgetExceeded:
                rec.status = "budget_exceeded"
            except HypergraphError:
                rec.status = "not_applicable"
            else:
                rec.size, rec.lp_objective, rec.candidates = cover.size, lp_obj, count
                rec.certified = cover.certified_ratio
                if opt:
                    rec.ratio = Fraction(cover.size, opt)
                elif opt == 0:
                    rec.ratio = Fraction(1) if cover.size == 0 else None
            if timing:
                rec.seconds = {"tau": tau_time, "method": time.perf_counter() - t0}
            records.append(rec)
    return records


def _q(q: Optional[Fraction]) -> str:
    return "" if q is None else f"{q.numerator}/{q.denominator}"


CSV_COLUMNS = ["instance", "k", "eps_num", "eps_den", "n", "m", "smallest_part", "method", "status",
               "tau", "size", "ratio", "ratio_float", "certified", "within_certified",
               "lp_objective", "candidates", "guarantee", "guarantee_float", "ugc", "conjecture", "np"]


def to_csv(records: list, timing: bool = False) -> str:
    buf = io.StringIO()
    cols = CSV_COLUMNS + (["tau_seconds", "method_seconds"] if timing else [])
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in records:
        row = [r.instance, r.k, r.eps.numerator, r.eps.denominator, r.n, r.m, r.smallest_part,
               r.method, r.status, "" if r.tau is None else r.tau, "" if r.size is None else r.size,
               _q(r.ratio), "" if r.ratio is None else f"{float(r.ratio):.6f}", _q(r.certified),
               "" if r.within_certified is None else str(r.within_certified).lower(),
               _q(r.lp_objective), "" if r.candidates is None else r.candidates,
               _q(r.guarantee), "" if r.guarantee is None else f"{float(r.guarantee):.6f}",
               _q(r.ugc), _q(r.conjecture), _q(r.np)]
        if timing:
            row += [r.seconds.get("tau"), r.seconds.get("method")]
        w.writerow(row)
    return buf.getvalue()


def _jq(q):
    return None if q is None else fileformat.rational(q)


def to_json(records: list, timing: bool = False) -> str:
    rows = []
    for r in records:
        row = {
            "instance": r.instance, "provenance": r.provenance, "k": r.k, "eps": _jq(r.eps),
            "n": r.n, "m": r.m, "smallest_part": r.smallest_part, "method": r.method,
            "status": r.status, "tau": r.tau, "size": r.size, "ratio": _jq(r.ratio),
            "certified": _jq(r.certified), "within_certified": r.within_certified,
            "lp_objective": _jq(r.lp_objective), "candidates": r.candidates,
            "guarantee": _jq(r.guarantee), "ugc": _jq(r.ugc), "conjecture": _jq(r.conjecture),
            "np": _jq(r.np),
        }
        if timing:
            row["seconds"] = r.seconds
        rows.append(row)
    return json.dumps({"schema": "densevc.bench/1", "records": rows}, indent=2) + "\n"


def summary(records: list) -> dict:
    """Worst achieved ratio per method, with the guarantee at that instance."""
    out = {}
    for r in records:
        if r.ratio is None:
            continue
        cur = out.get(r.method)
        if cur is None or r.ratio > cur["ratio"]:
            out[r.method] = {"ratio": r.ratio, "instance": r.instance, "guarantee": r.guarantee}
    return out


def load_suite(path) -> dict:
    with open(path) as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as exc:
            raise SuiteError(f"suite is not valid JSON: {exc}") from None


def worst(records: list, method: str) -> Fraction:
    ratios = [r.ratio for r in records if r.method == method and r.ratio is not None]
    return max(ratios, default=Fraction(0))

