"""Acceptance criteria, each at its stated tolerance.

Every check is exact (Fraction) unless a tolerance is named.  Empirical
maxima are attached to the summary line printed at the end of the run.
"""
import os
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from densevc import bounds, fileformat
from densevc.approx import approx_dense, guarantee, guarantee_general
from densevc.extract import best_extension, extract
from densevc.generators import (
    dense_corpus,
    pad_to_dense,
    padding_count,
    planted_dense,
    random_dense,
    random_lwise_dense,
    tight_family,
)
from densevc.hypergraph import density, is_vertex_cover, lwise_density, remove_hit_edges
from densevc.lp import lp_relax, round_threshold
from densevc.solvers import Method, tau

pytestmark = pytest.mark.filterwarnings("ignore:k = 2")


def note(record_property, text):
    record_property("note", text)


@pytest.fixture(scope="session")
def corpus():
    return dense_corpus()


@pytest.fixture(scope="session")
def planted():
    return dense_corpus(generator=planted_dense, seed=1)


@pytest.fixture(scope="session")
def lwise_corpus():
    out = []
    seed = 0
    for k in (2, 3, 4):
        for size in range(2, {2: 6, 3: 4, 4: 3}[k] + 1):
            for ell in range(1, k):
                for eps in ("1/4", "1/2", "3/4"):
                    for _ in range(2):
                        out.append((ell, Fraction(eps), random_lwise_dense(k, [size] * k, ell, eps, seed)))
                        seed += 1
    return out


@pytest.fixture(scope="session")
def padding_corpus():
    out = []
    seed = 0
    for k in (2, 3):
        for size in range(1, 16 // k + 1):
            for eps in ("1/3", "1/2", "2/3"):
                if padding_count(size, eps).denominator != 1:
                    continue
                for src_eps in ("1/4", "1/2"):
                    out.append((random_dense(k, [size] * k, src_eps, seed), Fraction(eps)))
                    seed += 1
    return out


@pytest.mark.acceptance(1, "tight-family exactness")
def test_tight_family(record_property):
    start = time.perf_counter()
    count = 0
    for k in range(1, 6):
        for l in range(1, 6):
            for u in range(1, l + 1):
                h = tight_family(k, l, u)
                assert density(h) == Fraction(u, l)
                assert tau(h) == u
                cands = extract(h)
                s, total = best_extension(h, cands, tau)
                assert total == u
                assert len(s) == u == density(h) * h.part_sizes[-1]
                assert any(len(c) >= u and len(c) + tau(remove_hit_edges(h, c).graph) == u for c in cands)
                count += 1
    elapsed = time.perf_counter() - start
    note(record_property, f"{count} instances in {elapsed:.1f}s")
    assert elapsed < 60


@pytest.mark.acceptance(2, "witness property on the random dense corpus")
def test_witness(corpus, record_property):
    start = time.perf_counter()
    assert len(corpus) >= 200
    assert {h.k for h in corpus} == {2, 3, 4} and all(max(h.part_sizes) <= 6 for h in corpus)
    for h in corpus:
        s, total = best_extension(h, extract(h), tau)
        assert total == tau(h)
        assert len(s) >= density(h) * h.part_sizes[-1]
    elapsed = time.perf_counter() - start
    note(record_property, f"{len(corpus)} instances in {elapsed:.1f}s")
    assert elapsed < 300


@pytest.mark.acceptance(3, "cover lower bound eps*|V_k|")
def test_lower_bound(corpus, planted):
    for h in corpus + planted:
        assert tau(h) >= density(h) * h.part_sizes[-1]


def _lp_ratios(instances):
    """(max lp-threshold ratio, max excess over the guarantee) after per-instance checks."""
    worst, worst_excess = Fraction(0), None
    for h in instances:
        opt = tau(h)
        eps = density(h)
        exact = approx_dense(h, Method.EXACT).chosen
        assert is_vertex_cover(h, exact.vertices) and exact.size == opt
        lp = approx_dense(h, Method.LP_THRESHOLD).chosen
        assert is_vertex_cover(h, lp.vertices)
        assert lp.size <= guarantee_general(h.k, eps, h.k) * opt
        ratio = Fraction(lp.size, opt)
        excess = ratio - guarantee(h.k, eps)
        worst = max(worst, ratio)
        worst_excess = excess if worst_excess is None else max(worst_excess, excess)
    return worst, worst_excess


@pytest.mark.acceptance(4, "approximation guarantee")
def test_guarantee(corpus, planted, record_property):
    worst, excess = _lp_ratios(corpus)
    note(record_property, f"lp-threshold max ratio {float(worst):.4f}, "
                          f"max excess over guarantee {float(excess):.4f}")
    assert excess <= Fraction(1, 4)
    # planted instances have covers well below |V_k| and stress the rounding harder
    worst, excess = _lp_ratios(planted)
    note(record_property, f"planted corpus max ratio {float(worst):.4f}")
    assert excess <= Fraction(1, 4)


@pytest.mark.acceptance(5, "output never exceeds |V_k|")
def test_output_cap(corpus, planted):
    instances = corpus + planted + [tight_family(k, 3, u) for k in (2, 3, 4) for u in (1, 2, 3)]
    for h in instances:
        for baseline in (Method.EXACT, Method.LP_THRESHOLD, Method.TRIVIAL_PART):
            chosen = approx_dense(h, baseline).chosen
            assert is_vertex_cover(h, chosen.vertices)
            assert chosen.size <= min(h.part_sizes)


@pytest.mark.acceptance(6, "padding construction")
def test_padding(padding_corpus, record_property):
    assert len(padding_corpus) >= 50
    findings = []
    for h, eps in padding_corpus:
        assert h.balanced and h.n <= 16 and h.k in (2, 3)
        g = pad_to_dense(h, eps)
        assert density(g) >= eps
        assert g.balanced
        c = eps / (1 - eps) * Fraction(h.n, h.k)
        if tau(g) != tau(h) + c:
            findings.append(fileformat.dumps(h))
    note(record_property, f"{len(padding_corpus)} instances, {len(findings)} additivity violations")
    assert not findings, findings[:3]


@pytest.mark.acceptance(7, "bounds dominance grid")
def test_bounds():
    grid = [Fraction(i, 10) for i in range(1, 10)]
    for k in range(3, 11):
        for eps in grid:
            ugc, conj, alg = bounds.ugc_factor(k, eps), bounds.conjecture_factor(k, eps), guarantee(k, eps)
            assert ugc <= conj == alg
            if k >= 4:
                assert bounds.np_factor(k, eps) <= ugc
            assert alg in bounds.cksv_guarantee(k, k - 1, eps)
            for ell in range(1, k - 1):
                assert bounds.cksv_guarantee(k, ell, eps).certainly_above(alg)
    assert all(r.dominance_ok for r in bounds.gap_table(range(3, 11), grid))


@pytest.mark.acceptance(8, "LP relaxation sanity")
def test_lp(corpus, lwise_corpus, record_property):
    for h in corpus:
        x = lp_relax(h)
        assert x.objective <= tau(h)
        c = round_threshold(h, x)
        assert is_vertex_cover(h, c.vertices)
        assert c.size <= h.k * x.objective
    worst_all = max(Fraction(tau(h)) / lp_relax(h).objective for h in corpus)
    findings, worst_lwise = [], Fraction(0)
    for _, _, h in lwise_corpus:
        gap = Fraction(tau(h)) / lp_relax(h).objective
        worst_lwise = max(worst_lwise, gap)
        if gap > Fraction(h.k, 2):
            findings.append(fileformat.dumps(h))
    note(record_property, f"max tau/lp {float(worst_all):.4f} on the corpus, "
                          f"{float(worst_lwise):.4f} on {len(lwise_corpus)} l-wise balanced instances")
    assert not findings, findings[:3]


@pytest.mark.acceptance(9, "l-wise consistency")
def test_lwise(lwise_corpus):
    for ell, eps, h in lwise_corpus:
        assert lwise_density(h, ell, tuple(range(ell)))[1] >= eps
        assert density(h) >= eps


SUITE = """{
  "version": 1,
  "methods": ["exact", "lp-threshold", "trivial-part", "approx-dense:exact", "approx-dense:lp-threshold"],
  "instances": [
    {"generator": "corpus"},
    {"generator": "corpus", "planted": true, "seed": 1},
    {"generator": "tight", "k": [1, 2, 3, 4], "l": [1, 2, 3]},
    {"generator": "lwise", "k": 3, "sizes": [3, 3, 3], "ell": [1, 2], "epsilon": ["1/4", "3/4"], "seed": [0, 1]}
  ]
}
"""


def _run_cli(args, hash_seed, cwd):
    env = dict(os.environ, PYTHONHASHSEED=str(hash_seed))
    proc = subprocess.run([sys.executable, "-m", "densevc", *args], env=env, cwd=cwd,
                          capture_output=True, check=True)
    return proc.stdout


@pytest.mark.acceptance(10, "byte-identical reports across runs")
def test_determinism(tmp_path):
    (tmp_path / "suite.json").write_text(SUITE)
    commands = [
        ["bench", "suite.json"],
        ["bench", "suite.json", "--format", "json"],
        ["bounds"],
        ["gen", "random", "--k", "4", "--sizes", "5,4,4,3", "--epsilon", "1/3", "--seed", "9"],
        ["gen", "planted", "--k", "3", "--sizes", "6,5,5", "--epsilon", "1/2", "--seed", "2"],
    ]
    for args in commands:
        first = _run_cli(args, 1, tmp_path)
        second = _run_cli(args, 2, tmp_path)
        assert first and first == second, args
    a = [fileformat.dumps(h) for h in dense_corpus()]
    b = [fileformat.dumps(h) for h in dense_corpus()]
    assert a == b
