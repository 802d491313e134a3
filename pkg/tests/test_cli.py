from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from cutforge.cli import (
    EXIT_EVAL, EXIT_OK, EXIT_PARSE, EXIT_UNDECIDED, EXIT_VERIFY, Config, main, run_script,
)
from cutforge.ordtower import cmp

SUITES = Path(__file__).resolve().parent.parent / "suites"


def run(text: str, **cfg):
    return run_script(text, Config(**cfg))


class TestExitCodes:
    def test_demo_ok(self):
        s, code, err = run((SUITES / "demo.cf").read_text())
        assert code == EXIT_OK and err is None

    def test_parse_error_has_position(self):
        _, code, err = run("field K = Q_rc(t1)\nelem a = (1 + t1)/(1 - t1\n")
        assert code == EXIT_PARSE
        assert err.startswith("line 2, column 26")

    def test_unknown_statement(self):
        _, code, err = run("frobnicate K\n")
        assert code == EXIT_PARSE and "line 1" in err

    def test_generator_limit(self):
        _, code, _ = run("elem a = t4\n", gens=3)
        assert code == EXIT_PARSE
        _, code, _ = run("elem a = t4\n", gens=4)
        assert code == EXIT_OK

    def test_evaluation_error(self):
        _, code, err = run("field K = Q_rc(t1)\nclassify elem(t1) over K\n")
        assert code == EXIT_EVAL and "line 2" in err

    def test_undecided(self):
        _, code, _ = run("field K = Q_rc(t1)\n"
                         "classify elem(sum(n=2, t1^(1-1/n)) - t1^(1/2) - t1^(2/3)) over K ; fuel=1\n")
        assert code == EXIT_UNDECIDED

    def test_same_statement_with_default_fuel(self):
        _, code, _ = run("field K = Q_rc(t1)\n"
                         "classify elem(sum(n=2, t1^(1-1/n)) - t1^(1/2) - t1^(2/3)) over K\n")
        assert code == EXIT_OK

    def test_verify_mismatch(self):
        _, code, _ = run("verify instance mult-square expect fail\n")
        assert code == EXIT_VERIFY
        _, code, _ = run("verify instance mult-outside-hull expect fail\n")
        assert code == EXIT_OK


class TestStatements:
    def test_classify_output(self):
        s, code, _ = run("classify elem(1/t2) over Q_rc(t1)\n")
        assert code == EXIT_OK
        assert s.entries[0]["result"]["tag"] == ["w", "0"]

    def test_derive_and_family(self):
        s, code, _ = run("field K = Q_rc(t1)\ncut S = sum(n=2, t1^(1-1/n)) over K\nderive A = add S\n"
                         "derive M = mlt A\nclassify A\nclassify M\n")
        assert code == EXIT_OK
        a, m = s.entries[-2]["result"], s.entries[-1]["result"]
        assert a["additive"] and not a["multiplicative"]
        assert m["multiplicative"] and m["tag"] == ["w", "w"]

    def test_hull(self):
        s, code, _ = run("field K = Q_rc(t1)\ncut R = elem(1/s1_2) over K\ncut B = above(0) over K\n"
                         "family G = [R, B]\nhull H = K with family G filter symmetric\n")
        assert code == EXIT_OK
        assert "H" in s.fields and s.fields["H"].gens == {"t1", "s1_2"}

    def test_multiplicative_bound(self):
        s, code, _ = run("verify multiplicative_bound x=1/t1 y=5/t1\n")
        assert code == EXIT_OK and s.entries[0]["result"]["witness"]["n"] == 2

    def test_monotone(self):
        s, code, _ = run("verify monotone num=x^3 - 3*x lo=-2 hi=2\n")
        assert code == EXIT_OK
        modes = [p[2] for p in s.entries[0]["result"]["witness"]["pieces"]]
        assert modes == ["increasing", "decreasing", "increasing"]


@pytest.mark.parametrize("text", [
    "1/t1 + t2/t1^2", "(1 + t1)/(1 - t1)", "sqrt(2)*t1^(3/2)", "root(x^2 - 2, 1, 2) + t1", "sum(n=2, t1^(1 - 1/n))",
    "7 + sum(n=1, t1^(2^n))", "-t2^(1/3)",
])
def test_printed_elements_reparse(text):
    s, code, _ = run(f"elem a = {text}\n")
    assert code == EXIT_OK
    a = s.elems["a"]
    s2, code, err = run(f"elem b = {a}\n")
    assert code == EXIT_OK, err
    assert str(s2.elems["b"]) == str(a)
    assert cmp(a, s2.elems["b"]) == 0


def test_main_classify(capsys):
    assert main(["classify", "-e", "elem(1/t2) over Q_rc(t1)"]) == EXIT_OK
    assert "(w,0)" in capsys.readouterr().out


def test_main_shipped_verify(capsys):
    assert main(["verify"]) == EXIT_OK


def test_main_missing_file():
    assert main(["run", "/nonexistent/x.cf"]) == EXIT_PARSE


def test_json_report_shape(tmp_path):
    out = tmp_path / "r.json"
    assert main(["run", str(SUITES / "demo.cf"), "--json", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["header"]["config"]["fuel"] == 64
    for entry in doc["body"]:
        assert set(entry) >= {"command", "result"}


def _report(path: Path, seed: str) -> bytes:
    env = dict(os.environ, PYTHONHASHSEED=seed)
    subprocess.run([sys.executable, "-m", "cutforge.cli", "run", str(SUITES / "full.cf"), "--json", str(path)],
                   check=True, env=env, capture_output=True)
    return path.read_bytes()


def test_reports_byte_identical_across_processes(tmp_path):
    assert _report(tmp_path / "a.json", "1") == _report(tmp_path / "b.json", "2")
