import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from content_transfer.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args, **kwargs):
    return runner.invoke(main, args, auto_envvar_prefix="CT", **kwargs)


class TestVectorize:
    def test_empty_input(self, runner, tmp_path):
        raw = tmp_path / "raw.jsonl"
        raw.write_text("")
        out = tmp_path / "vec.jsonl"
        result = invoke(runner, ["vectorize", str(raw), str(out)])
        assert result.exit_code == 0, result.output
        assert out.read_text() == ""

    def test_retweets_dropped(self, runner, tmp_path):
        raw = tmp_path / "raw.jsonl"
        raw.write_text('{"user": "a", "time": 1.0, "text": "RT @b hello"}\n')
        out = tmp_path / "vec.jsonl"
        result = invoke(runner, ["vectorize", str(raw), str(out)])
        assert result.exit_code == 0, result.output
        assert out.read_text() == ""

    def test_toy_corpus(self, runner, tmp_path):
        raw = tmp_path / "raw.jsonl"
        lines = [
            {"user": "a", "time": 1.0, "text": "apple banana"},
            {"user": "a", "time": 2.0, "text": "apple cherry"},
            {"user": "b", "time": 3.0, "text": "banana cherry cherry"},
            {"user": "b", "time": 4.0, "text": "apple apple date"},
            {"user": "b", "time": 5.0, "text": "egg"},
        ]
        raw.write_text("".join(json.dumps(l) + "\n" for l in lines))
        out = tmp_path / "vec.jsonl"
        result = invoke(runner, ["vectorize", str(raw), str(out), "--dim", "6", "--seed", "3"])
        assert result.exit_code == 0, result.output
        assert "documents=5" in result.output
        assert "vocabulary=3" in result.output
        rows = [json.loads(l) for l in out.read_text().splitlines()]
        assert len(rows) == 5
        assert all(len(r["vector"]) == 6 for r in rows)
        # docs 0 and 1 share the apple weight but differ in the rare term
        assert rows[0]["vector"] != rows[1]["vector"]

    def test_malformed_line_reports_number(self, runner, tmp_path):
        raw = tmp_path / "raw.jsonl"
        raw.write_text('{"user": "a", "time": 1.0, "text": "ok"}\nnot json\n')
        result = invoke(runner, ["vectorize", str(raw), str(tmp_path / "v.jsonl")])
        assert result.exit_code == 2
        assert ":2:" in result.output

    def test_iso8601_times_accepted(self, runner, tmp_path):
        raw = tmp_path / "raw.jsonl"
        raw.write_text(
            '{"user": "a", "time": "2010-09-20T12:00:00+00:00", "text": "apple pie"}\n'
            '{"user": "a", "time": "2010-09-20T13:00:00+00:00", "text": "apple cake"}\n'
        )
        result = invoke(runner, ["vectorize", str(raw), str(tmp_path / "v.jsonl")])
        assert result.exit_code == 0, result.output


class TestSynthAndPairs:
    def synth(self, runner, tmp_path, seed="0"):
        tmp_path.mkdir(parents=True, exist_ok=True)
        events = tmp_path / "events.jsonl"
        truth = tmp_path / "truth.csv"
        result = invoke(
            runner,
            [
                "synth", str(events), str(truth),
                "--users", "4", "--events", "150",
                "--edge", "u000:u001:1.0", "--seed", seed,
            ],
        )
        assert result.exit_code == 0, result.output
        return events, truth

    def test_synth_deterministic(self, runner, tmp_path):
        e1, t1 = self.synth(runner, tmp_path / "a", seed="5")
        e2, t2 = self.synth(runner, tmp_path / "b", seed="5")
        assert e1.read_bytes() == e2.read_bytes()
        assert t1.read_bytes() == t2.read_bytes()

    def test_synth_truth_contents(self, runner, tmp_path):
        _, truth = self.synth(runner, tmp_path)
        assert truth.read_text().splitlines() == ["source,target,p", "u000,u001,1.000000"]

    def test_synth_invalid_spec(self, runner, tmp_path):
        result = invoke(
            runner,
            ["synth", str(tmp_path / "e.jsonl"), str(tmp_path / "t.csv"),
             "--users", "2", "--edge", "u000:ghost:0.5"],
        )
        assert result.exit_code == 2
        assert "ghost" in result.output

    def test_pairs_and_rerun_byte_identical(self, runner, tmp_path):
        events, _ = self.synth(runner, tmp_path)
        args = [
            "pairs", str(events), str(tmp_path / "edges.csv"),
            "--nc", "50", "--min-triples", "50", "--seed", "2",
        ]
        result = invoke(runner, args)
        assert result.exit_code == 0, result.output
        first = (tmp_path / "edges.csv").read_bytes()
        hist_first = (tmp_path / "edges.csv.hist.csv").read_bytes()
        result = invoke(runner, args)
        assert result.exit_code == 0
        assert (tmp_path / "edges.csv").read_bytes() == first
        assert (tmp_path / "edges.csv.hist.csv").read_bytes() == hist_first

    def test_pairs_requires_two_users(self, runner, tmp_path):
        events = tmp_path / "one.jsonl"
        events.write_text('{"user": "a", "time": 1.0, "vector": [0.1]}\n')
        result = invoke(runner, ["pairs", str(events), str(tmp_path / "e.csv")])
        assert result.exit_code == 2

    def test_end_to_end_eval(self, runner, tmp_path):
        events, truth = self.synth(runner, tmp_path)
        result = invoke(
            runner,
            ["pairs", str(events), str(tmp_path / "edges.csv"),
             "--nc", "50", "--min-triples", "50", "--seed", "2"],
        )
        assert result.exit_code == 0, result.output
        out_json = tmp_path / "eval.json"
        result = invoke(
            runner,
            ["eval", str(tmp_path / "edges.csv"), str(truth), "--out", str(out_json)],
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(out_json.read_text())
        assert payload["auc"] > 0.9


class TestEval:
    def write_edges(self, path, rows):
        lines = ["source,target,te,mi,n_triples"]
        lines += [f"{s},{t},{te},{mi},{n}" for s, t, te, mi, n in rows]
        Path(path).write_text("\n".join(lines) + "\n")

    def test_perfect_scores(self, runner, tmp_path):
        edges = tmp_path / "edges.csv"
        self.write_edges(edges, [("a", "b", 0.9, 0.5, 100), ("b", "a", 0.1, 0.1, 100)])
        truth = tmp_path / "truth.csv"
        truth.write_text("source,target,p\na,b,1.0\n")
        result = invoke(runner, ["eval", str(edges), str(truth)])
        assert result.exit_code == 0, result.output
        assert '"auc": 1.000000' in result.output

    def test_null_stderr_paper_sizes(self, runner, tmp_path):
        rows = [(f"s{i}", f"t{i}", float(i), 0.0, 100) for i in range(74 + 785)]
        edges = tmp_path / "edges.csv"
        self.write_edges(edges, rows)
        truth = tmp_path / "truth.csv"
        truth_lines = ["source,target,p"] + [f"s{i},t{i},1.0" for i in range(74)]
        truth.write_text("\n".join(truth_lines) + "\n")
        result = invoke(runner, ["eval", str(edges), str(truth)])
        assert result.exit_code == 0, result.output
        stderr = json.loads(result.output.strip())["null_stderr"]
        assert abs(stderr - 0.035) < 0.002

    def test_no_positives(self, runner, tmp_path):
        edges = tmp_path / "edges.csv"
        self.write_edges(edges, [("a", "b", 0.9, 0.5, 100)])
        truth = tmp_path / "truth.csv"
        truth.write_text("source,target,p\nx,y,1.0\n")
        result = invoke(runner, ["eval", str(edges), str(truth)])
        assert result.exit_code == 2


class TestValidate:
    def test_small_run_passes(self, runner, tmp_path):
        out = tmp_path / "curves.csv"
        result = invoke(runner, ["validate", "--out", str(out), "--trials", "5", "--seed", "1"])
        assert result.exit_code == 0, result.output
        assert result.output.count("PASS") == 4
        header = out.read_text().splitlines()[0]
        assert header == "curve,n,mean,ci_lo,ci_hi,trials"


class TestEnvOverrides:
    def test_seed_from_environment(self, runner, tmp_path):
        events = tmp_path / "e.jsonl"
        truth = tmp_path / "t.csv"
        result = runner.invoke(
            main,
            ["synth", str(events), str(truth), "--users", "2", "--events", "10"],
            auto_envvar_prefix="CT",
            env={"CT_SYNTH_SEED": "9"},
        )
        assert result.exit_code == 0, result.output
        baseline = runner.invoke(
            main,
            ["synth", str(tmp_path / "e2.jsonl"), str(tmp_path / "t2.csv"),
             "--users", "2", "--events", "10", "--seed", "9"],
            auto_envvar_prefix="CT",
        )
        assert baseline.exit_code == 0
        assert events.read_bytes() == (tmp_path / "e2.jsonl").read_bytes()
