import csv
import io
import json

import pytest

from qsym import cli, suites
from qsym.cli import run


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


# -- compute --------------------------------------------------------------------


def test_compute_b0(capsys):
    assert run(["compute", "bernoulli", "--n", "0"]) == 0
    assert capsys.readouterr().out.strip() == "L/(q-1)"


def test_compute_powersum(capsys):
    assert run(["compute", "powersum", "--k", "2", "--n", "2"]) == 0
    assert capsys.readouterr().out.strip() == "q + 4*q^2"


def test_compute_rebased_b0(capsys):
    assert run(["compute", "bernoulli", "--n", "0", "--rebase", "2"]) == 0
    assert capsys.readouterr().out.strip() == "2*L/((q-1)*(q+1))"


def test_compute_json(capsys):
    assert run(["compute", "bernpoly", "--n", "1", "--var", "y1", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["what"] == "bernpoly" and doc["var"] == "y1" and "y1" in doc["value"]


def test_compute_powersum_needs_k(capsys):
    assert run(["compute", "powersum", "--n", "2"]) == 2
    assert "--k" in capsys.readouterr().err


# -- exit codes --------------------------------------------------------------------


def test_bad_flag_exits_two():
    with pytest.raises(SystemExit) as exc:
        run(["verify", "--no-such-flag"])
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["padic", "--q", "1"],
        ["padic", "--p", "4"],
        ["verify", "--family", "F9"],
        ["verify", "--suite", "nope"],
        ["verify", "--w", "1,2"],
        ["crosscheck", "--which", "L99"],
    ],
)
def test_configuration_errors_exit_two(capsys, argv):
    assert run(argv) == 2
    assert capsys.readouterr().err.startswith("qsym: error:")


def test_mismatch_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(suites, "classical_bernoulli", lambda n: 7)
    assert run(["limit", "--n-max", "2", "--format", "text"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_flags_do_not_change_exit_code(capsys):
    code, doc = run_json(capsys, ["verify", "--family", "F5", "--n-max", "2", "--w", "2,3,1"])
    assert code == 0
    assert all(r["status"] == "pass" for r in doc["results"])
    assert all(r["flags"] for r in doc["results"])
    assert doc["summary"]["flagged"] == 3


# -- report formats ------------------------------------------------------------------


def test_json_schema_and_order(capsys):
    code, doc = run_json(capsys, ["verify", "--family", "F1,F2", "--n-max", "1", "--w-max", "2"])
    assert code == 0
    assert set(doc) == {"config", "results", "summary"}
    assert doc["summary"] == {"total": 32, "passed": 32, "failed": 0, "flagged": 0}
    first = doc["results"][0]
    assert set(first) == {"suite", "params", "status", "detail", "flags", "millis"}
    assert first["millis"] is None
    assert first["params"] == {"id": "F1", "n": 0, "w": [1, 1, 1]}
    keys = [(r["params"]["id"], r["params"]["n"], r["params"]["w"]) for r in doc["results"]]
    assert keys == sorted(keys)


def test_timing_fills_millis(capsys):
    _, doc = run_json(capsys, ["limit", "--n-max", "3", "--timing"])
    assert all(isinstance(r["millis"], (int, float)) for r in doc["results"])


def test_csv_format(capsys):
    assert run(["limit", "--n-max", "3", "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0][:3] == ["suite", "params", "status"]
    assert len(rows) == 5
    assert json.loads(rows[1][1]) == {"id": "classical", "n": 0}


def test_too_few_cutoffs_is_a_failure_not_an_error(capsys):
    assert run(["padic", "--p", "3", "--n-max", "1", "--N", "1,2,3", "--format", "text"]) == 1
    assert '"significant_digits": 2' in capsys.readouterr().out


def test_text_format_summary(capsys):
    assert run(["padic", "--p", "3", "--n-max", "1", "--format", "text"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[-1] == "4/4 passed, 0 failed, 0 flagged"


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    assert run(["crosscheck", "--suite", "multiplication", "--w-max", "2", "--K", "4", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(target.read_text())
    assert doc["config"]["multiplication"] == {"K": 4, "w_max": 2}
    assert {r["params"]["id"] for r in doc["results"]} == {"coefficients", "series", "specialization"}


def test_single_point_family_run(capsys):
    code, doc = run_json(capsys, ["verify", "--family", "F1", "--n-max", "2", "--w", "1,1,1"])
    assert code == 0 and doc["summary"]["total"] == 3


# -- parallelism -----------------------------------------------------------------------


def test_thread_env_is_used(monkeypatch):
    seen = []
    real = suites.run_tasks
    monkeypatch.setattr(suites, "run_tasks", lambda tasks, jobs: seen.append(jobs) or real(tasks, jobs))
    monkeypatch.setenv("QSYM_THREADS", "3")
    run(["limit", "--n-max", "1", "--out", "/dev/null"])
    run(["limit", "--n-max", "1", "--jobs", "2", "--out", "/dev/null"])
    assert seen == [3, 2]


def test_bad_thread_env(monkeypatch, capsys):
    monkeypatch.setenv("QSYM_THREADS", "zero")
    assert run(["limit", "--n-max", "1"]) == 2


def test_parallel_output_matches_serial(capsys):
    argv = ["verify", "--suite", "chain", "--n-max", "3", "--w-max", "2"]
    suites.reset_caches()
    run(argv + ["--jobs", "1"])
    serial = capsys.readouterr().out
    suites.reset_caches()
    run(argv + ["--jobs", "4"])
    assert capsys.readouterr().out == serial


def test_entry_point_exits_with_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["compute", "bernoulli", "--n", "1"])
    assert exc.value.code == 0
