import csv
import io
import json
import subprocess
import sys

import pytest

import simcon.enumeration as enum
from simcon.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_count():
    assert call("count", "-k", "2", "-n", "2") == (0, "16\n", "")


def test_count_json_identical_across_threads(monkeypatch):
    monkeypatch.setattr(enum, "PARALLEL_MIN_PARENTS", 1)
    _, one, _ = call("count", "-k", "2", "-n", "4", "--json", "--threads", "1", "--seed", "7")
    _, many, _ = call("count", "-k", "2", "-n", "4", "--json", "--threads", "3", "--seed", "7")
    assert one == many
    assert json.loads(one)["total_classes"] == "312"


def test_count_budget_exit_code():
    code, out, _ = call("count", "-k", "2", "-n", "8", "--budget-seconds", "0")
    assert code == 2
    assert out.startswith(">= ") and "inexact" in out
    code, out, _ = call("count", "-k", "2", "-n", "8", "--memory-mb", "1", "--json")
    assert code == 2 and json.loads(out)["exact"] is False


def test_count_emit_reps(tmp_path):
    path = tmp_path / "reps.txt"
    code, out, _ = call("count", "-k", "2", "-n", "1", "--emit-reps", str(path))
    assert code == 0 and out == "4\n"
    assert path.read_text() == "\n\na\nb\n\nab\n"


def test_count_fingerprint():
    code, out, _ = call("count", "-k", "3", "-n", "2", "--mode", "fingerprint",
                        "--cross-check", "--json")
    data = json.loads(out)
    assert code == 0 and data["total_classes"] == "152" and data["mode"] == "fingerprint"


def test_equiv():
    assert call("equiv", "-n", "2", "abacb", "baaacbb")[:2] == (0, "equivalent\n")
    assert call("equiv", "-n", "3", "abacb", "baaacbb")[:2] == (0, "distinguished by: aba\n")
    code, out, _ = call("equiv", "-n", "3", "abacb", "baaacbb", "--json")
    assert json.loads(out) == {"n": 3, "equivalent": False, "witness": "aba"}
    assert call("equiv", "-n", "1", "", "")[:2] == (0, "equivalent\n")


def test_subwords():
    code, out, _ = call("subwords", "-n", "2", "abacb")
    assert out.split("\n") == ["", "a", "b", "c", "aa", "ab", "ac", "ba", "bb", "bc", "cb", ""]


def test_minimal():
    assert call("minimal", "-n", "2", "aaa")[:2] == (0, "aa\t(input not minimal)\n")
    assert call("minimal", "-n", "1", "ab")[:2] == (0, "ab\t(already minimal)\n")
    code, _, err = call("minimal", "-n", "2", "abcabcabcabcabc")
    assert code == 2 and "budget" in err


def test_richness_and_factorize():
    assert call("richness", "-k", "3", "bbaaabbccccaabbbaa")[:2] == (0, "2\n")
    assert call("factorize", "-k", "3", "bbaaabbccccaabbbaa")[:2] == \
        (0, "bbaaabb·c|cccaa·b|bbaa\n")
    code, out, _ = call("factorize", "-k", "2", "abba", "--json")
    assert json.loads(out) == {"m": 2, "pairs": [["a", "b"], ["b", "a"]], "tail": ""}


def test_bounds():
    code, out, _ = call("bounds", "-k", "2", "-n", "4")
    assert code == 0 and "main-upper" in out and "violated" not in out
    code, out, _ = call("bounds", "-k", "2", "-n", "4", "--which", "eq5", "--json")
    (r,) = json.loads(out)
    assert r["upper"] == "43690" and r["satisfied"] == "holds"


def test_bounds_compute():
    code, out, _ = call("bounds", "-k", "3", "-n", "7", "--which", "main", "--compute",
                        "--memory-mb", "1")
    assert code == 2


def test_table_small():
    code, out, _ = call("table", "--max-classes", "400")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    statuses = {r["status"] for r in rows}
    assert "mismatch" not in statuses and "match" in statuses
    row = next(r for r in rows if (r["k"], r["n"]) == ("2", "4"))
    assert row["computed"] == "312" and row["status"] == "match"


def test_verify():
    code, out, _ = call("verify", "--samples", "20", "--suite", "capped-count",
                        "--suite", "segment")
    assert code == 0
    assert out.splitlines() == ["PASS  capped-count lemma: 20 samples",
                                "PASS  segment lemma: 20 samples"]


@pytest.mark.parametrize("argv", [
    ["equiv", "-n", "2", "-k", "2", "abc", "ab"],
    ["count", "-k", "2"],
    ["count", "-k", "0", "-n", "2"],
    ["count", "-k", "2", "-n", "2", "--threads", "0"],
    ["bogus"],
    ["subwords", "-n", "-1", "ab"],
])
def test_input_errors(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == "" and err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "simcon", "count", "-k", "3", "-n", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "8\n"


def test_threads_env(monkeypatch):
    monkeypatch.setenv("SIMCON_THREADS", "2")
    assert enum.default_workers() == 2
