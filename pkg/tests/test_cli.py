"""
Command line: outputs, exit codes and report files.
"""

import json

import pytest

from src.cli import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VIOLATIONS, run_command
from tests.conftest import FIXTURES

G1 = str(FIXTURES / "g1.grp")
G2 = str(FIXTURES / "g2.grp")
BROKEN = str(FIXTURES / "broken_aut.grp")


def run(capsys, *argv):
    code = run_command(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestWordCommands:

    def test_nf(self, capsys):
        code, out, _ = run(capsys, "nf", "--group", G1, "--word", "b a t t^-1")
        assert code == EXIT_OK
        assert out == "a b\n"

    def test_mul(self, capsys):
        _, out, _ = run(capsys, "mul", "--group", G1, "a t", "t^-1 b")
        assert out == "a b\n"

    @pytest.mark.parametrize("metric,expected", [("rel", "2\n"), ("x", "4\n")])
    def test_dist(self, capsys, metric, expected):
        _, out, _ = run(capsys, "dist", "--group", G1, "--metric", metric, "--from", "1", "--to", "a^2 b t")
        assert out == expected

    def test_dist_uses_adjoined_letters(self, capsys):
        _, out, _ = run(capsys, "dist", "--group", G1, "--aut", "inner_t2", "--metric", "x", "--from", "1", "--to", "t^2")
        assert out == "1\n"

    def test_geodesic_all(self, capsys):
        _, out, _ = run(capsys, "geodesic", "--group", G1, "--from", "1", "--to", "a", "--all")
        assert set(out.splitlines()) == {"A(1,0)", "a"}

    def test_geodesic_empty(self, capsys):
        _, out, _ = run(capsys, "geodesic", "--group", G1, "--from", "t", "--to", "t")
        assert out == "(empty)\n"


class TestAutomorphismCommands:

    def test_aut_check(self, capsys):
        code, out, _ = run(capsys, "aut", "check", "--group", G1, "--aut", "conj_ab")
        summary = json.loads(out)
        assert code == EXIT_OK
        assert summary["S"] == 5
        assert summary["peripheral_map"] == {"A": {"target": "A", "conjugator": "1"}}
        assert summary["extra_x_elements"] == []

    def test_aut_check_adjoined(self, capsys):
        _, out, _ = run(capsys, "aut", "check", "--group", G1, "--aut", "inner_t2")
        assert json.loads(out)["extra_x_elements"] == ["t^-2"]

    def test_fix_enumerate(self, capsys):
        _, out, _ = run(capsys, "fix", "enumerate", "--group", G1, "--aut", "phi1", "--syl", "3", "--coord", "3")
        document = json.loads(out)
        assert document["count"] == 7
        assert document["window"] == "(3,3)"
        assert document["elements"][0] == "1"

    def test_qc_profile_ladder(self, capsys):
        code, out, _ = run(capsys, "fix", "qc-profile", "--group", G1, "--aut", "inner_t", "--format", "csv")
        assert code == EXIT_OK
        assert out.splitlines() == [
            "window,fixed,pairs,skipped,sigma",
            '"(1,1)",3,3,0,0',
            '"(2,2)",5,10,0,0',
        ]

    def test_fix_induced(self, capsys):
        code, out, _ = run(capsys, "fix", "induced", "--group", G1, "--aut", "conj_ab", "--threshold", "4")
        assert code == EXIT_OK
        assert json.loads(out)["per_check"][0]["estimate"] == {"classes": 1}


class TestVerify:

    def test_window_suites(self, capsys):
        code, out, _ = run(capsys, "verify", "--group", G1, "--aut", "phi1", "--suite", "maln,bgen", "--syl", "1", "--coord", "1")
        document = json.loads(out)
        assert code == EXIT_OK
        assert [entry["suite"] for entry in document["per_check"]] == ["maln", "bgen"]
        assert document["config"]["automorphism"] == "phi1"

    def test_adjoined_conjugator_cascades(self, capsys):
        code, out, err = run(capsys, "verify", "--group", G1, "--aut", "inner_t2", "--suite", "cascades", "--seed", "42", "--syl", "2", "--coord", "2")
        assert code == EXIT_OK, err
        assert {entry["suite"] for entry in json.loads(out)["per_check"]} == {"cascades"}

    def test_violation_exit_code_still_writes_report(self, capsys):
        code, out, _ = run(capsys, "verify", "--group", G1, "--aut", "phi1", "--suite", "bgen", "--P", "0", "--syl", "1", "--coord", "1")
        assert code == EXIT_VIOLATIONS
        assert json.loads(out)["per_check"][0]["status"] == "fail"

    def test_out_file_is_byte_stable(self, capsys, tmp_path):
        argv = ["verify", "--group", G1, "--aut", "phi1", "--suite", "xlength", "--seed", "3", "--samples", "6", "--syl", "1", "--coord", "1"]
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        assert run(capsys, *argv, "--out", str(first))[0] == EXIT_OK
        assert run(capsys, *argv, "--out", str(second))[0] == EXIT_OK
        assert first.read_bytes() == second.read_bytes()

    def test_log_dir_records_events(self, capsys, tmp_path):
        run(capsys, "verify", "--group", G1, "--aut", "phi1", "--suite", "maln", "--syl", "1", "--coord", "1", "--log-dir", str(tmp_path))
        events = [json.loads(line) for line in (tmp_path / "run_events.jsonl").read_text().splitlines()]
        assert [e["event"] for e in events] == ["suite_start", "check", "run_end"]
        assert len(events[0]["input_hash"]) == 64

    def test_sampled_suite_without_seed(self, capsys):
        code, _, err = run(capsys, "verify", "--group", G1, "--aut", "phi1")
        assert code == EXIT_INPUT_ERROR
        assert "seed" in err


class TestProbes:

    def test_bcp(self, capsys):
        code, out, _ = run(capsys, "probe", "bcp", "--group", G2, "--seed", "1", "--samples", "5", "--syl", "2", "--coord", "1")
        assert code == EXIT_OK
        assert json.loads(out)["per_check"][0]["samples"] == 5

    def test_mu(self, capsys):
        _, out, _ = run(capsys, "probe", "mu", "--group", G1, "--aut", "phi1", "--syl", "1", "--coord", "1", "--theta", "2")
        assert json.loads(out)["per_check"][0]["estimate"] == {"mu": 1}

    def test_rho_needs_seed(self, capsys):
        code, _, err = run(capsys, "probe", "rho", "--group", G1)
        assert code == EXIT_INPUT_ERROR
        assert "--seed" in err


class TestInputErrors:

    def test_missing_group_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "nf", "--group", str(tmp_path / "missing.grp"), "--word", "a")
        assert code == EXIT_INPUT_ERROR
        assert err.startswith("relfix:")

    def test_broken_automorphism(self, capsys):
        code, _, err = run(capsys, "aut", "check", "--group", BROKEN, "--aut", "collapse")
        assert code == EXIT_INPUT_ERROR
        assert err.startswith("relfix:")

    def test_bad_word(self, capsys):
        code, _, _ = run(capsys, "nf", "--group", G1, "--word", "q^2")
        assert code == EXIT_INPUT_ERROR

    def test_usage_error(self, capsys):
        assert run(capsys, "frobnicate")[0] == EXIT_INPUT_ERROR

    def test_help(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == EXIT_OK
        assert "verify" in out
