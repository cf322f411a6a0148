"""Command-line behavior, exit codes included."""

import json

import pytest

from semichain.arena import AssignEvent, Transcript
from semichain.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValue:
    def test_rows(self, capsys):
        code, out, _ = run_cli(capsys, "value", "--max-w", "3")
        assert code == 0
        assert out.splitlines() == ["1\t1", "2\t3", "3\t4"]

    def test_single_row(self, capsys):
        code, out, _ = run_cli(capsys, "value", "--max-w", "1")
        assert code == 0 and out.strip() == "1\t1"

    def test_zero_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["value", "--max-w", "0"])
        assert exc.value.code == 2


class TestPlay:
    def test_golden_five(self, capsys, tmp_path):
        out_path = tmp_path / "t.json"
        code, out, _ = run_cli(
            capsys, "play", "--w", "5", "--spoiler", "golden",
            "--algorithm", "alg", "--out", str(out_path),
        )
        assert code == 0
        assert "chains=8 bound=8" in out
        assert Transcript.load(str(out_path)).chains_used == 8

    def test_general_doubler(self, capsys):
        code, out, _ = run_cli(
            capsys, "play", "--w", "2", "--mode", "general",
            "--spoiler", "doubler", "--algorithm", "first-fit",
        )
        assert code == 0
        assert "chains=3" in out

    def test_unknown_algorithm_exit_two(self, capsys):
        code, _, err = run_cli(capsys, "play", "--w", "2", "--algorithm", "wat")
        assert code == 2
        assert "UnknownStrategy" in err


class TestSweep:
    def test_alg_matches_bound_everywhere(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--max-w", "10", "--algorithms", "alg")
        assert code == 0
        rows = [line.split("\t") for line in out.strip().splitlines()]
        assert len(rows) == 10
        for w, name, chains, bound in rows:
            assert name == "alg" and chains == bound


class TestVerifyAndProoflab:
    def make_transcript(self, capsys, tmp_path, w=4):
        path = tmp_path / "g.json"
        run_cli(capsys, "play", "--w", str(w), "--out", str(path))
        return path

    def test_verify_ok(self, capsys, tmp_path):
        path = self.make_transcript(capsys, tmp_path)
        code, out, _ = run_cli(capsys, "verify", str(path))
        assert code == 0 and out.strip() == "ok"

    def test_verify_tampered(self, capsys, tmp_path):
        path = self.make_transcript(capsys, tmp_path, w=2)
        t = Transcript.load(str(path))
        events = list(t.events)
        idx = max(
            i for i, e in enumerate(events) if isinstance(e, AssignEvent)
        )
        events[idx] = AssignEvent(events[idx].id, 0)
        Transcript(t.config, events, t.chains_used, t.outcome).save(str(path))
        code, out, _ = run_cli(capsys, "verify", str(path))
        assert code == 1
        assert "algorithm_fault" in out

    def test_prooflab_report(self, capsys, tmp_path):
        path = self.make_transcript(capsys, tmp_path, w=6)
        code, out, _ = run_cli(capsys, "prooflab", str(path))
        assert code == 0
        report = json.loads(out.strip().splitlines()[-1])
        assert report["ok"] is True
        assert report["up_paths"] + report["down_paths"] == report["chains_used"]

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "verify", "/nonexistent/file.json")
        assert code == 2


class TestAdversary:
    def test_golden_two(self, capsys):
        code, out, _ = run_cli(capsys, "adversary", "--w", "2", "--spoiler", "golden")
        assert code == 0 and out.strip() == "3"

    def test_doubler_defaults_to_general(self, capsys):
        code, out, _ = run_cli(capsys, "adversary", "--w", "2", "--spoiler", "doubler")
        assert code == 0 and out.strip() == "3"
