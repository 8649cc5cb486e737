import json
import subprocess
import sys
from pathlib import Path

import pytest

from patavoid.cli import EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_OK, main

DATA = Path(__file__).parent / "data"
V25 = "0010011001110011011100011"


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def fields(text):
    return dict(line.split(": ", 1) for line in text.splitlines())


class TestAnalyze:
    def test_worked_example_pattern(self, capsys):
        status, out, _ = run(capsys, "analyze", "ACBBCBBABCAB")
        f = fields(out)
        assert status == EXIT_OK
        assert f["command"] == "analyze" and f["k"] == "3" and f["doubled"] == "true"
        assert f["reduced"] == "ACDECDBAECAB"

    def test_not_doubled(self, capsys):
        _, out, _ = run(capsys, "analyze", "ABA")
        f = fields(out)
        assert f["doubled"] == "false"
        assert f["reduced"].startswith("n/a")

    def test_reduction(self, capsys):
        _, out, _ = run(capsys, "analyze", "ABBCDBCABDDCB")
        assert fields(out)["reduced"] == "AEBCDECABDDCB"

    def test_parse_error(self, capsys):
        status, out, err = run(capsys, "analyze", "aba")
        assert status == EXIT_ERROR and out == ""
        assert "position 1" in err


def test_occurrences(capsys):
    status, out, _ = run(capsys, "occurrences", V25, "ACBBCBBABCAB")
    f = fields(out)
    assert status == EXIT_OK
    assert f["count"] == "1"
    assert f["occurrence_1"] == "length 21 lengths [2, 1, 3] (A=01; B=1; C=100)"


class TestSimulate:
    def test_reached_with_record(self, capsys, tmp_path):
        path = tmp_path / "rec.json"
        status, out, _ = run(capsys, "simulate", "AA", "--sigma", "4", "--target", "100", "--emit-record", str(path))
        f = fields(out)
        assert status == EXIT_OK
        assert f["outcome"] == "reached" and f["roundtrip"] == "ok" and f["record_violations"] == "0"
        doc = json.loads(path.read_text())
        assert doc["seed"] == 0 and doc["pattern"] == "AA" and len(doc["final_word"]) == 100
        status, out, _ = run(capsys, "decode", str(path))
        assert status == EXIT_OK and len(fields(out)["V"]) == int(f["steps"])

    def test_budget_exhausted(self, capsys):
        status, out, _ = run(capsys, "simulate", "AA", "--target", "50", "--max-steps", "5000")
        f = fields(out)
        assert status == EXIT_INCONCLUSIVE
        assert f["outcome"] == "budget_exhausted" and f["max_length_seen"] == "3" and f["roundtrip"] == "ok"

    def test_doubled_four_variables(self, capsys):
        status, out, _ = run(
            capsys, "simulate", "AABDDDCBCBCDCDDBBBCCDACB", "--target", "500", "--seed", "2", "--check-every", "250"
        )
        assert status == EXIT_OK and fields(out)["outcome"] == "reached"

    def test_rejects_non_doubled(self, capsys):
        status, _, err = run(capsys, "simulate", "ABA")
        assert status == EXIT_ERROR and "not doubled" in err

    def test_deterministic(self, capsys):
        args = ("simulate", "ACBBCBBABCAB", "--target", "300", "--seed", "5", "--show-word")
        first = run(capsys, *args)
        assert run(capsys, *args) == first


class TestDecode:
    def test_worked_example_file(self, capsys):
        status, out, _ = run(capsys, "decode", str(DATA / "worked_example.json"))
        f = fields(out)
        assert status == EXIT_OK
        assert f["V"] == V25 and f["t"] == "25" and f["erasures"] == "1"

    def test_empty_record(self, capsys, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text(json.dumps({"pattern": "AA", "sigma": 2, "D": "", "L": [], "X": [], "final_word": ""}))
        status, out, _ = run(capsys, "decode", str(path))
        assert status == EXIT_OK and fields(out)["V"] == ""

    def test_corrupted_l_entry(self, capsys, tmp_path):
        doc = json.loads((DATA / "worked_example.json").read_text())
        doc["L"] = [[2, 9]]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        status, out, err = run(capsys, "decode", str(path))
        assert status == EXIT_ERROR and out == "" and err.startswith("error:")

    def test_missing_file(self, capsys, tmp_path):
        status, _, err = run(capsys, "decode", str(tmp_path / "nope.json"))
        assert status == EXIT_ERROR and err


class TestGamma:
    def test_golden(self, capsys):
        status, out, _ = run(capsys, "gamma", "24")
        assert status == EXIT_OK
        assert out == (
            "command: gamma\n"
            "d: 24\n"
            "tau_lo: 0.812535123221247 (rounded down)\n"
            "tau_hi: 0.812535123235168 (rounded up)\n"
            "x_star: 64324210749539/79164837199872\n"
            "upper: 1.27575 (rounded up)\n"
            "lower: 1.27574 (rounded down)\n"
            "certificate: gamma_24 <= 1.27575 certified\n"
        )

    def test_claims(self, capsys):
        status, out, _ = run(capsys, "gamma", "100", "--claim", "1.08603")
        assert status == EXIT_OK and fields(out)["certificate"] == "gamma_100 <= 1.08603 certified"
        status, out, _ = run(capsys, "gamma", "40", "--claim", "1.15685")
        assert status == EXIT_ERROR
        assert fields(out)["certificate"] == "gamma_40 <= 1.15685 REFUTED (gamma_40 >= 1.18196)"

    def test_exact_two(self, capsys):
        _, out, _ = run(capsys, "gamma", "2")
        assert fields(out)["x_star"] == "1/2" and fields(out)["upper"] == "3.00000 (rounded up)"


class TestCounting:
    def test_dyck(self, capsys):
        _, out, _ = run(capsys, "dyck", "3", "1")
        assert fields(out)["count"] == "5"
        _, out, _ = run(capsys, "dyck", "3", "2", "--r", "1")
        assert fields(out) == {"command": "dyck", "t": "3", "d": "2", "r": "1", "count": "2"}

    def test_dyck_bad(self, capsys):
        status, _, err = run(capsys, "dyck", "3", "0")
        assert status == EXIT_ERROR and "d must be" in err

    def test_gbar(self, capsys):
        status, out, _ = run(capsys, "gbar", "5", "48", "--claim", "1.21973")
        f = fields(out)
        assert status == EXIT_OK
        assert f["core"] == "13824" and f["gbar"] == "1.219728587090 (rounded up)"
        assert f["certificate"].endswith("certified") and "NOT" not in f["certificate"]
        status, out, _ = run(capsys, "gbar", "5", "48", "--claim", "1.2197")
        assert status == EXIT_ERROR and "NOT certified" in out


class TestSweep:
    def test_golden(self, capsys, tmp_path):
        csv_path, json_path = tmp_path / "t.csv", tmp_path / "t.json"
        status, out, _ = run(capsys, "ogf-sweep", "--csv", str(csv_path), "--json", str(json_path))
        f = fields(out)
        assert status == EXIT_OK
        assert (f["argmax_size"], f["argmax_multiset"], f["argmax_ell"], f["b"]) == ("24", "2 2 2 18", "46", "84")
        assert f["max_value"] == "[1.101113680355, 1.101113680356]"
        assert f["cells"] == "2926"
        assert csv_path.read_text().startswith("size,multiset,ell,b,root\n")
        assert json.loads(json_path.read_text())["b"] == 84

    def test_bad_range(self, capsys):
        status, _, err = run(capsys, "ogf-sweep", "--max", "120")
        assert status == EXIT_ERROR and "exceeds" in err


class TestSearch:
    def test_golden(self, capsys):
        status, out, _ = run(capsys, "search", "AA")
        assert status == EXIT_OK
        assert out == (
            "command: search\npattern: AA\nsigma: 2\noutcome: exhausted\nM: 3\nmaximal_words: 2\nnodes: 7\n"
        )

    def test_witness(self, capsys):
        status, out, _ = run(capsys, "search", "AAA", "--depth", "500")
        f = fields(out)
        assert status == EXIT_OK and f["outcome"] == "depth_reached" and f["witness_length"] == "500"

    def test_budget(self, capsys):
        status, out, _ = run(capsys, "search", "AABAA", "--budget", "50")
        assert status == EXIT_INCONCLUSIVE and fields(out)["outcome"] == "budget_exceeded"

    def test_timing_flag(self, capsys):
        _, out, _ = run(capsys, "search", "AA", "--timing")
        assert "duration_s" in fields(out)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "patavoid", "dyck", "4", "2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert fields(proc.stdout)["count"] == "3"


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "kernels" in capsys.readouterr().out
