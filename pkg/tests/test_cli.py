"""Command-line interface: subcommands, artifacts, exit codes."""

from __future__ import annotations

import io
import json

import pytest

from conftest import DATA_DIR
from salientsum import sample_corpus_path
from salientsum.cli import cli_main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli_main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


CORPUS = str(sample_corpus_path())


@pytest.fixture()
def tiny_doc(tmp_path):
    path = tmp_path / "doc.txt"
    path.write_text(
        "Mango trees line the river delta. Ember storms frighten the grove. "
        "Haze settles over the ivory valley. Jade carvings fill the karma temple."
    )
    return path


class TestSummarize:
    def test_stdout_summary(self, tiny_doc):
        code, out, err = run_cli("summarize", "--input", str(tiny_doc), "--length", "10")
        assert code == 0, err
        assert out.strip().startswith("Mango trees")

    def test_worked_run_configuration_reproduces_golden(self, golden_summary):
        code, out, err = run_cli(
            "summarize", "--input", CORPUS, "--length", "15%", "--theta", "0.1"
        )
        assert code == 0, err
        assert out.strip() == golden_summary

    def test_out_dir_artifacts(self, tiny_doc, tmp_path):
        out_dir = tmp_path / "artifacts"
        code, _, err = run_cli(
            "summarize", "--input", str(tiny_doc), "--length", "20",
            "--emit", "all", "--out", str(out_dir),
        )
        assert code == 0, err
        names = {p.name for p in out_dir.iterdir()}
        assert names == {"summary.txt", "matrix.csv", "matrix.json", "trace.json"}
        trace = json.loads((out_dir / "trace.json").read_text())
        assert trace["schema_version"] == 1
        accepted = sorted(e["index"] for e in trace["entries"] if e["accepted"])
        assert accepted == trace["selected"]
        matrix = json.loads((out_dir / "matrix.json").read_text())
        assert len(matrix["rows"]) == 4

    def test_feature_mask_matches_explicit_weights(self, tiny_doc):
        _, by_mask, _ = run_cli(
            "summarize", "--input", str(tiny_doc), "--length", "15", "--features", "3"
        )
        _, by_weights, _ = run_cli(
            "summarize", "--input", str(tiny_doc), "--length", "15",
            "--features", "3", "--weights", "9", "9", "1", "9", "9",
        )
        assert by_mask == by_weights  # masked-out weights are irrelevant

    def test_sentiment_none_and_fixture(self, tiny_doc, tmp_path):
        fixture = tmp_path / "fixture.json"
        fixture.write_text(json.dumps([[{"surface": "x", "polarity": -0.9}], [], [], []]))
        code, _, err = run_cli(
            "summarize", "--input", str(tiny_doc), "--length", "10",
            "--sentiment", f"fixture:{fixture}",
        )
        assert code == 0, err
        code, _, _ = run_cli(
            "summarize", "--input", str(tiny_doc), "--length", "10",
            "--sentiment", "none",
        )
        assert code == 0

    def test_custom_stopwords_and_lexicon(self, tiny_doc, tmp_path):
        stops = tmp_path / "stops.txt"
        stops.write_text("the\n")
        lex = tmp_path / "lex.tsv"
        lex.write_text("storms\t-0.8\n")
        code, out, err = run_cli(
            "summarize", "--input", str(tiny_doc), "--length", "30",
            "--stopwords", str(stops), "--sentiment", f"lexicon:{lex}",
        )
        assert code == 0, err
        assert out.strip()

    def test_position_mode_flag(self, tiny_doc):
        code, _, _ = run_cli(
            "summarize", "--input", str(tiny_doc), "--length", "10",
            "--position-mode", "eq2",
        )
        assert code == 0


class TestEvaluate:
    def test_identical_files_score_one(self, tmp_path):
        f = tmp_path / "text.txt"
        f.write_text("The river rose and the bridges fell down fast.")
        code, out, err = run_cli(
            "evaluate", "--system", str(f), "--ref", str(f), "--metrics", "rouge1"
        )
        assert code == 0, err
        payload = json.loads(out)
        assert payload["scores"]["rouge1"]["f"] == 1.0

    def test_csv_format_and_aliases(self, tmp_path):
        f = tmp_path / "text.txt"
        f.write_text("alpha beta gamma delta")
        code, out, _ = run_cli(
            "evaluate", "--system", str(f), "--ref", str(f),
            "--metrics", "rouge1,rougeS,rougeSU", "--format", "csv",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "metric,recall,precision,f"
        assert [ln.split(",")[0] for ln in lines[1:]] == ["rouge1", "rougeS*", "rougeSU*"]

    def test_multiple_references(self, tmp_path):
        sys_f = tmp_path / "sys.txt"
        sys_f.write_text("alpha beta")
        r1 = tmp_path / "r1.txt"
        r1.write_text("alpha")
        r2 = tmp_path / "r2.txt"
        r2.write_text("beta beta beta")
        code, out, _ = run_cli(
            "evaluate", "--system", str(sys_f), "--ref", str(r1),
            "--ref", str(r2), "--metrics", "rouge1",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["metadata"]["reference_count"] == 2
        assert payload["scores"]["rouge1"]["recall"] == 0.5

    def test_limit_words(self, tmp_path):
        sys_f = tmp_path / "sys.txt"
        sys_f.write_text("same same different different")
        ref_f = tmp_path / "ref.txt"
        ref_f.write_text("same same other other")
        code, out, _ = run_cli(
            "evaluate", "--system", str(sys_f), "--ref", str(ref_f),
            "--metrics", "rouge1", "--limit-words", "2",
        )
        assert code == 0
        assert json.loads(out)["scores"]["rouge1"]["f"] == 1.0


class TestAblate:
    def test_bundled_fixture_matches_golden(self, golden_ablation_csv):
        code, out, err = run_cli(
            "ablate", "--input", CORPUS, "--ref", str(DATA_DIR / "fixture_reference.txt")
        )
        assert code == 0, err
        assert out == golden_ablation_csv

    def test_json_format(self, tiny_doc, tmp_path):
        ref = tmp_path / "ref.txt"
        ref.write_text("Mango trees line the river delta.")
        code, out, err = run_cli(
            "ablate", "--input", str(tiny_doc), "--ref", str(ref),
            "--length", "12", "--limit-words", "12", "--format", "json",
        )
        assert code == 0, err
        payload = json.loads(out)
        assert len(payload["rows"]) == 31

    def test_out_dir(self, tiny_doc, tmp_path):
        ref = tmp_path / "ref.txt"
        ref.write_text("Mango trees line the river delta.")
        out_dir = tmp_path / "report"
        code, _, err = run_cli(
            "ablate", "--input", str(tiny_doc), "--ref", str(ref),
            "--length", "12", "--out", str(out_dir),
        )
        assert code == 0, err
        assert (out_dir / "ablation.csv").read_text().count("\n") == 32  # header + 31


class TestStats:
    def test_matches_golden(self, golden_stats):
        code, out, err = run_cli("stats", "--input", CORPUS)
        assert code == 0, err
        assert json.loads(out) == golden_stats


class TestExitCodes:
    def test_usage_errors_exit_one(self, tiny_doc):
        assert run_cli("bogus")[0] == 1
        assert run_cli("summarize")[0] == 1  # --input missing
        assert run_cli(
            "summarize", "--input", str(tiny_doc), "--sentiment", "telepathy"
        )[0] == 1
        assert run_cli(
            "summarize", "--input", str(tiny_doc), "--features", "9"
        )[0] == 1
        f = str(tiny_doc)
        assert run_cli("evaluate", "--system", f, "--ref", f, "--metrics", "rougeX")[0] == 1

    def test_data_errors_exit_two(self, tmp_path, tiny_doc):
        assert run_cli("summarize", "--input", str(tmp_path / "nope.txt"))[0] == 2
        empty = tmp_path / "empty.txt"
        empty.write_text("...")
        assert run_cli("summarize", "--input", str(empty))[0] == 2
        assert run_cli(
            "summarize", "--input", str(tiny_doc), "--length", "0"
        )[0] == 2
        bad_lex = tmp_path / "bad.tsv"
        bad_lex.write_text("term\t9.9\n")
        assert run_cli(
            "summarize", "--input", str(tiny_doc), "--sentiment", f"lexicon:{bad_lex}"
        )[0] == 2

    def test_help_exits_zero(self):
        with pytest.raises(SystemExit) as excinfo:
            # argparse prints help and exits; cli_main converts to return code
            code = cli_main(["--help"], stdout=io.StringIO(), stderr=io.StringIO())
            raise SystemExit(code)
        assert excinfo.value.code == 0
