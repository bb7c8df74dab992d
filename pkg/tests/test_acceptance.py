"""Acceptance gate: one pass/fail line per criterion, printed to the terminal.

The full grids run once through the CLI at one worker thread (from cold
caches, so the timings are honest) and once more at eight threads for the
determinism comparison.
"""

import json
import time

import pytest

from qsym import suites
from qsym.cli import run
from qsym.identities import COROLLARIES, EXPANSIONS, FAMILIES, evaluate, verify_family
from qsym.identities.verify import family_variants

COMMANDS = {
    "families": ["verify", "--suite", "families"],
    "specializations": ["verify", "--suite", "corollaries,chain,auxiliary"],
    "crosscheck": ["crosscheck"],
    "padic": ["padic", "--p", "3,5,7", "--n-max", "6", "--N", "1,2,3,4,5", "--M", "12"],
    "limit": ["limit", "--n-max", "12"],
}


def _run_all(tmp_path, jobs):
    docs, raw, seconds = {}, {}, {}
    suites.reset_caches()
    for name, argv in COMMANDS.items():
        out = tmp_path / f"{name}-{jobs}.json"
        start = time.perf_counter()
        code = run(argv + ["--jobs", str(jobs), "--out", str(out)])
        seconds[name] = time.perf_counter() - start
        raw[name] = out.read_bytes()
        docs[name] = json.loads(raw[name])
        docs[name]["exit"] = code
    return docs, raw, seconds


@pytest.fixture(scope="module")
def serial(tmp_path_factory):
    return _run_all(tmp_path_factory.mktemp("serial"), 1)


@pytest.fixture
def report(capsys):
    def emit(number, ok, note):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {note}")
        return ok

    return emit


def _results(doc, suite=None, id=None):
    return [
        r
        for r in doc["results"]
        if (suite is None or r["suite"] == suite) and (id is None or r["params"]["id"] == id)
    ]


def test_criterion_1_families(serial, report):
    docs, _, seconds = serial
    doc = docs["families"]
    rows = _results(doc, "family")
    seen = {(r["params"]["id"], r["params"]["n"], tuple(r["params"]["w"])) for r in rows}
    want = {(f, n, w) for f in FAMILIES for n in range(9) for w in suites.w_grid(3)}
    flagged = {r["params"]["id"] for r in rows if r["flags"]}
    ok = (
        seen == want
        and all(r["status"] == "pass" for r in rows)
        and doc["exit"] == 0
        and seconds["families"] < 300
    )
    note = f"{len(rows)} family checks, flagged families {sorted(flagged)}, {seconds['families']:.0f}s"
    assert report(1, ok, note)


def test_criterion_2_specializations(serial, report):
    docs, _, _ = serial
    rows = _results(docs["specializations"], "corollary")
    ids = {r["params"]["id"] for r in rows}
    n_ok = {r["params"]["n"] for r in rows} == set(range(9))
    w_ok = all(max(r["params"]["w"]) <= 4 for r in rows)
    mult = _results(docs["crosscheck"], "multiplication")
    matched = [r for r in mult if r["params"]["id"] in ("coefficients", "specialization")]
    mult_ok = (
        {tuple(r["params"]["w"]) for r in matched} == {(w,) for w in range(1, 6)}
        and all(r["params"]["K"] == 12 for r in matched)
        and all(r["status"] == "pass" for r in mult)
    )
    ok = ids == set(COROLLARIES) and n_ok and w_ok and all(r["status"] == "pass" for r in rows) and mult_ok
    assert report(2, ok, f"{len(rows)} specialization checks over {len(ids)} ids, {len(mult)} coefficient checks")


def test_criterion_3_chain(serial, report):
    docs, _, _ = serial
    rows = _results(docs["specializations"], "chain")
    points = {(r["params"]["n"], tuple(r["params"]["w"][:2])) for r in rows}
    want = {(n, (a, b)) for n in range(9) for a in range(1, 5) for b in range(1, 5)}
    ok = points == want and all(r["status"] == "pass" for r in rows)
    assert report(3, ok, f"{len(rows)} chain points, 8 expressions each")


def test_criterion_4_series(serial, report):
    docs, _, _ = serial
    rows = _results(docs["crosscheck"], "expansion")
    lam = _results(docs["crosscheck"], "lambda13")
    ws = set(suites.w_grid(2))
    exp_ok = (
        {(r["params"]["id"], tuple(r["params"]["w"])) for r in rows} == {(e, w) for e in EXPANSIONS for w in ws}
        and all(r["params"]["K"] == 10 for r in rows)
    )
    lam_ok = {tuple(r["params"]["w"]) for r in lam} == ws and all(r["params"]["K"] == 8 for r in lam)
    ok = exp_ok and lam_ok and all(r["status"] == "pass" for r in rows + lam)
    assert report(4, ok, f"{len(rows)} expansion checks to t^10, {len(lam)} substitution checks to t^8")


def test_criterion_5_limit(serial, report):
    docs, _, _ = serial
    rows = _results(docs["limit"])
    ok = [r["params"]["n"] for r in rows] == list(range(13)) and all(r["status"] == "pass" for r in rows)
    assert report(5, ok, "n = 0..12 exact")


def test_criterion_6_padic(serial, report):
    docs, _, seconds = serial
    rows = _results(docs["padic"])
    moments = [r for r in rows if r["params"]["id"] == "moment"]
    shifts = [r for r in rows if r["params"]["id"] == "shift"]
    digits = min(r["detail"]["significant_digits"] for r in moments)
    ok = (
        len(moments) == len(shifts) == 21
        and all(r["detail"]["monotone"] and r["detail"]["significant_digits"] >= 3 for r in moments)
        and all(r["status"] == "pass" for r in rows)
        and seconds["padic"] < 60
    )
    assert report(6, ok, f"min significant digits {digits}, {seconds['padic']:.1f}s")


def test_criterion_7_fault_injection(report):
    n, w = 3, (1, 2, 3)
    injected = located = 0
    for fid, fam in FAMILIES.items():
        compared, _ = family_variants(fam)
        for index, (_, expr) in enumerate(compared):
            value = evaluate(expr, n, w)
            targets = sorted(value.terms) + [(0, 0, 0, 0, 4)]
            for exps in targets:
                r = verify_family(fid, n, w, perturb=(index, exps))
                injected += 1
                if not r.passed and tuple(r.detail["exponents"]) == exps:
                    located += 1
    ok = injected == located and injected > 0
    assert report(7, ok, f"{located}/{injected} perturbations caught and located")


def test_criterion_8_determinism(serial, tmp_path, report):
    _, raw_serial, _ = serial
    _, raw_parallel, _ = _run_all(tmp_path, 8)
    same = [name for name in COMMANDS if raw_serial[name] == raw_parallel[name]]
    ok = len(same) == len(COMMANDS)
    assert report(8, ok, f"{len(same)}/{len(COMMANDS)} reports byte-identical at 1 vs 8 threads")
