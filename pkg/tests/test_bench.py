import json
from fractions import Fraction

import pytest

from densevc import fileformat
from densevc.bench import (
    SuiteError,
    bench,
    expand_instances,
    load_suite,
    summary,
    to_csv,
    to_json,
    worst,
)
from densevc.generators import tight_family

SUITE = {
    "version": 1,
    "methods": ["exact", "lp-threshold", "trivial-part", "approx-dense:exact", "approx-dense:lp-threshold"],
    "instances": [
        {"generator": "tight", "k": [2, 3], "l": 2},
        {"generator": "random", "k": 3, "sizes": [3, 3, 2], "epsilon": "1/2", "seed": [0, 1]},
        {"generator": "lwise", "k": 3, "sizes": [[2, 2, 2]], "ell": 1, "epsilon": "1/2", "seed": 0},
        {"generator": "planted", "k": 3, "sizes": [[3, 3, 3]], "epsilon": "1/4", "seed": 2},
    ],
}


def test_expand():
    got = expand_instances(SUITE)
    assert len(got) == 4 + 2 + 1 + 1
    assert got[0][1] == tight_family(2, 2, 1)


def test_file_entry(tmp_path):
    fileformat.write(tight_family(3, 2, 1), tmp_path / "a.hvc")
    got = expand_instances({"instances": [{"file": "a.hvc"}]}, tmp_path)
    assert got == [("a.hvc", tight_family(3, 2, 1))]


def test_records():
    records = bench(SUITE)
    assert len(records) == 8 * 5
    for r in records:
        assert r.status == "ok"
        assert r.size >= r.tau
        if r.method in ("exact", "approx-dense:exact"):
            assert r.ratio == 1
        if r.within_certified is not None:
            assert r.within_certified
    assert worst(records, "exact") == 1
    assert summary(records)["exact"]["ratio"] == 1


def test_k1_not_applicable():
    records = bench({"methods": ["approx-dense:exact"], "instances": [{"generator": "tight", "k": 1, "l": 2, "u": 1}]})
    assert records[0].status == "not_applicable"


def test_budget_exceeded():
    suite = {"budget": 1, "methods": ["exact"],
             "instances": [{"generator": "random", "k": 3, "sizes": [6, 6, 6], "epsilon": "1/4", "seed": 0}]}
    records = bench(suite)
    assert records[0].status == "budget_exceeded" and records[0].tau is None


def test_bad_suites(tmp_path):
    with pytest.raises(SuiteError):
        bench({"version": 2})
    with pytest.raises(SuiteError):
        bench({"methods": ["magic"]})
    with pytest.raises(SuiteError):
        bench({"instances": [{"generator": "nope"}]})
    path = tmp_path / "s.json"
    path.write_text("{")
    with pytest.raises(SuiteError):
        load_suite(path)


def test_reports_are_byte_stable():
    a, b = bench(SUITE), bench(SUITE)
    assert to_csv(a) == to_csv(b)
    assert to_json(a) == to_json(b)


def test_reports():
    records = bench(SUITE)
    lines = to_csv(records).splitlines()
    assert len(lines) == 1 + len(records)
    assert "seconds" not in lines[0]
    data = json.loads(to_json(records))
    assert data["schema"] == "densevc.bench/1" and len(data["records"]) == len(records)
    timed = bench(SUITE, timing=True)
    assert all(set(r.seconds) == {"tau", "method"} for r in timed)
    assert "seconds" in to_csv(timed, timing=True).splitlines()[0]


def test_corpus_entry():
    got = expand_instances({"instances": [{"generator": "corpus", "ks": [2], "per_cell": 2}]})
    assert len(got) == 6
    assert all(h.k == 2 for _, h in got)
    assert all(Fraction(json.loads(label)["params"]["eps"]) in
               {Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)} for label, _ in got)
