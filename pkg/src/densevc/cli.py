"""Command-line interface.

Exit codes: 0 ok, 2 usage or bad parameters, 3 malformed input file,
4 exact-solver budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import bench as benchmod
from . import bounds, fileformat, generators
from .approx import approx_dense
from .extract import extract
from .fileformat import FormatError, rational
from .hypergraph import HypergraphError, density, map_back, normalize
from .lp import lp_relax, round_threshold
from .solvers import BudgetExceeded, Method, exact_cover, trivial_cover

EXIT_OK, EXIT_USAGE, EXIT_FORMAT, EXIT_BUDGET = 0, 2, 3, 4


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def _fraction_list(text: str) -> list:
    return [_fraction(t) for t in text.replace(" ", "").split(",") if t]


def _k_range(text: str) -> list:
    if "-" in text:
        lo, hi = text.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return _int_list(text)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _vertices(vs) -> list:
    return [list(v) for v in sorted(vs)]


def cmd_gen(args) -> int:
    if args.kind == "tight":
        h = generators.tight_family(args.k, args.l, args.u)
    elif args.kind == "random":
        h = generators.random_dense(args.k, args.sizes, args.epsilon, args.seed)
    elif args.kind == "planted":
        h = generators.planted_dense(args.k, args.sizes, args.epsilon, args.seed)
    else:
        h = generators.random_lwise_dense(args.k, args.sizes, args.ell, args.epsilon, args.seed)
    _emit(fileformat.dumps(h), args.output)
    return EXIT_OK


def cmd_pad(args) -> int:
    h = fileformat.read(args.input)
    _emit(fileformat.dumps(generators.pad_to_dense(h, args.epsilon)), args.output)
    return EXIT_OK


def cmd_extract(args) -> int:
    h = fileformat.read(args.input)
    g, perm = normalize(h)
    eps = density(g)
    threshold = eps * g.part_sizes[-1]
    cands = [map_back(s, perm) for s in extract(g)]
    out = {
        "density": rational(eps),
        "threshold": rational(threshold),
        "count": len(cands),
        "candidates": [{"vertices": _vertices(s), "size": len(s), "meets_threshold": len(s) >= threshold}
                       for s in cands],
    }
    _emit(_json(out), args.output)
    return EXIT_OK


def _cover_json(cover) -> dict:
    return {
        "vertices": _vertices(cover.vertices),
        "size": cover.size,
        "method": cover.method.value,
        "certified_ratio": None if cover.certified_ratio is None else rational(cover.certified_ratio),
    }


def cmd_solve(args) -> int:
    h = fileformat.read(args.input)
    method = args.method.replace("-", "_")
    out = {}
    if method == Method.EXACT.value:
        cover = exact_cover(h)
    elif method == Method.LP_THRESHOLD.value:
        x = lp_relax(h)
        cover = round_threshold(h, x)
        out["lp_objective"] = rational(x.objective)
    elif method == Method.TRIVIAL_PART.value:
        cover = trivial_cover(h)
    else:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report = approx_dense(h, args.baseline.replace("-", "_"))
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        cover = report.chosen
        out.update({
            "baseline": report.baseline.value,
            "baseline_factor": None if report.baseline_factor is None else rational(report.baseline_factor),
            "density": rational(report.density),
            "guarantee": rational(report.guarantee),
            "candidate_count": report.candidate_count,
            "per_candidate": [list(p) for p in report.per_candidate],
        })
    result = _cover_json(cover)
    if args.tau or method == Method.EXACT.value:
        opt = exact_cover(h).size
        result["tau"] = opt
        result["ratio"] = rational(Fraction(cover.size, opt)) if opt else None
    result.update(out)
    _emit(_json(result), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    h = fileformat.read(args.input)
    out = {
        "ok": True,
        "k": h.k,
        "m": h.m,
        "part_sizes": list(h.part_sizes),
        "density": rational(density(h)),
        "normalized": h.normalized,
        "balanced": h.balanced,
        "provenance": h.provenance,
    }
    if h.provenance and h.provenance.get("generator") not in (None, "padded"):
        out["regenerates"] = generators.regenerate(h.provenance) == h
    _emit(_json(out), args.output)
    return EXIT_OK


def cmd_bounds(args) -> int:
    rows = bounds.gap_table(args.k_range, args.epsilon_grid, args.ell_grid)
    ells = sorted({l for r in rows for l in r.cksv})
    if args.format == "json":
        data = [{
            "k": r.k, "eps": rational(r.eps), "ugc": rational(r.ugc), "conjecture": rational(r.conjecture),
            "np": None if r.np is None else rational(r.np), "guarantee": rational(r.guarantee),
            "cksv": {str(l): {"lo": rational(b.lo), "hi": rational(b.hi)} for l, b in r.cksv.items()},
            "checks": r.checks, "dominance_ok": r.dominance_ok,
        } for r in rows]
        _emit(_json(data), args.output)
    else:
        q = lambda x: "" if x is None else f"{x.numerator}/{x.denominator}"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "eps_num", "eps_den", "ugc", "conjecture", "np", "guarantee"]
                   + [f"cksv_ell_{l}" for l in ells] + ["dominance_ok"])
        for r in rows:
            w.writerow([r.k, r.eps.numerator, r.eps.denominator, q(r.ugc), q(r.conjecture), q(r.np),
                        q(r.guarantee)]
                       + [f"{r.cksv[l].value:.12f}" if l in r.cksv else "" for l in ells]
                       + [str(r.dominance_ok).lower()])
        _emit(buf.getvalue(), args.output)
    return EXIT_OK if all(r.dominance_ok for r in rows) else 1


def cmd_bench(args) -> int:
    suite = benchmod.load_suite(args.suite)
    records = benchmod.bench(suite, Path(args.suite).parent, timing=args.timing)
    if args.format == "json":
        text = benchmod.to_json(records, args.timing)
    else:
        text = benchmod.to_csv(records, args.timing)
    _emit(text, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="densevc", description="Vertex cover on dense k-partite hypergraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def output(sp):
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    gen = sub.add_parser("gen", help="generate an instance in HVC format")
    gsub = gen.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("tight", help="tight family: all parts of size l, u heavy vertices")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--l", type=int, required=True)
    g.add_argument("--u", type=int, required=True)
    output(g)
    for kind in ("random", "planted", "lwise"):
        g = gsub.add_parser(kind)
        g.add_argument("--k", type=int, required=True)
        g.add_argument("--sizes", type=_int_list, required=True, help="comma-separated, non-increasing")
        if kind == "lwise":
            g.add_argument("--ell", type=int, required=True)
        g.add_argument("--epsilon", type=_fraction, required=True)
        g.add_argument("--seed", type=int, default=0)
        output(g)

    sp = sub.add_parser("pad", help="pad a balanced instance to density epsilon")
    sp.add_argument("input")
    sp.add_argument("--epsilon", type=_fraction, required=True)
    output(sp)

    sp = sub.add_parser("extract", help="list extracted candidate sets as JSON")
    sp.add_argument("input")
    output(sp)

    sp = sub.add_parser("solve", help="compute a vertex cover")
    sp.add_argument("input")
    sp.add_argument("--method", choices=["exact", "lp-threshold", "trivial-part", "approx-dense"],
                    default="approx-dense")
    sp.add_argument("--baseline", choices=["exact", "lp-threshold", "trivial-part"], default="exact")
    sp.add_argument("--tau", action="store_true", help="also report the optimum and achieved ratio")
    output(sp)

    sp = sub.add_parser("verify", help="validate an HVC file and summarize it")
    sp.add_argument("input")
    output(sp)

    sp = sub.add_parser("bounds", help="tabulate hardness factors and guarantees")
    sp.add_argument("--k-range", type=_k_range, default=list(range(3, 11)), help="e.g. 3-10 or 3,5,7")
    sp.add_argument("--epsilon-grid", type=_fraction_list,
                    default=[Fraction(i, 10) for i in range(1, 10)])
    sp.add_argument("--ell-grid", type=_int_list, default=None)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    output(sp)

    sp = sub.add_parser("bench", help="run a benchmark suite (JSON config)")
    sp.add_argument("suite")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--timing", action="store_true", help="include wall times (reports stop being byte-stable)")
    output(sp)
    return p


COMMANDS = {"gen": cmd_gen, "pad": cmd_pad, "extract": cmd_extract, "solve": cmd_solve,
            "verify": cmd_verify, "bounds": cmd_bounds, "bench": cmd_bench}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (HypergraphError, benchmod.SuiteError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
