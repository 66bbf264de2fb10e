import json
import subprocess
import sys

import pytest

from igbosim.cli import main
from igbosim.corpus import load_vectors, save_vectors
from igbosim.ngrams import FeatureVector

import reference_tables as ref


@pytest.fixture
def fig4_docs(tmp_path):
    # two documents whose unigram counts are (4, 2) and (6, 5)
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text("xxx xxx xxx xxx yyy yyy", encoding="utf-8")
    b.write_text("xxx " * 6 + "yyy " * 5, encoding="utf-8")
    return a, b


class TestPreprocess:
    def test_fig3(self, fig3_path, capsys):
        assert main(["preprocess", str(fig3_path)]) == 0
        out = capsys.readouterr().out
        assert len(out.splitlines()) == 35
        assert out.splitlines()[0] == "kpaacharu"

    def test_empty_file(self, tmp_path, capsys):
        path = tmp_path / "empty.txt"
        path.write_bytes(b"")
        assert main(["preprocess", str(path)]) == 0
        assert capsys.readouterr().out == ""

    def test_invalid_utf8(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_bytes(b"ihe\xc3(")
        assert main(["preprocess", str(path)]) == 1
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "offset 3" in captured.err

    def test_out_file(self, fig3_path, tmp_path, capsys):
        out = tmp_path / "tokens.txt"
        assert main(["preprocess", str(fig3_path), "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        assert len(out.read_text(encoding="utf-8").splitlines()) == 35

    def test_custom_stopwords(self, tmp_path, capsys):
        doc = tmp_path / "d.txt"
        doc.write_text("makana ihe ala", encoding="utf-8")
        stop = tmp_path / "stop.txt"
        stop.write_text("ala\n", encoding="utf-8")
        assert main(["preprocess", str(doc), "--stopwords", str(stop)]) == 0
        assert capsys.readouterr().out == "makana\nihe\n"

    def test_missing_stopwords_file(self, fig3_path, tmp_path, capsys):
        assert main(["preprocess", str(fig3_path), "--stopwords", str(tmp_path / "nope.txt")]) == 1
        assert "nope.txt" in capsys.readouterr().err

    def test_config_file(self, tmp_path, capsys):
        doc = tmp_path / "d.txt"
        doc.write_text("na ihe", encoding="utf-8")
        cfg = tmp_path / "p.cfg"
        cfg.write_text("min_token_length = 2\n", encoding="utf-8")
        assert main(["preprocess", str(doc), "--config", str(cfg)]) == 0
        # "na" is still a stop-word
        assert capsys.readouterr().out == "ihe\n"


class TestVectorize:
    def test_unigram(self, fig3_path, tmp_path):
        out = tmp_path / "v.tsv"
        assert main(["vectorize", str(fig3_path), "--n", "1", "--out", str(out)]) == 0
        assert load_vectors(out) == [FeatureVector("fig3", 1, ref.UNIGRAM_TABLE)]

    def test_bigram(self, fig3_path, tmp_path):
        out = tmp_path / "v.tsv"
        assert main(["vectorize", str(fig3_path), "--n", "2", "--out", str(out)]) == 0
        assert load_vectors(out) == [FeatureVector("fig3", 2, ref.BIGRAM_TABLE)]

    def test_json(self, fig3_path, capsys):
        assert main(["vectorize", str(fig3_path), "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data[0]["counts"] == ref.UNIGRAM_TABLE

    def test_directory(self, synthetic_corpus, capsys):
        assert main(["vectorize", str(synthetic_corpus), "--n", "2"]) == 0
        assert capsys.readouterr().out.count("\ndoc\t") == 10

    @pytest.mark.parametrize("bad", ["0", "-1", "x", "1,2"])
    def test_bad_order(self, fig3_path, bad, capsys):
        assert main(["vectorize", str(fig3_path), "--n", bad]) == 2
        assert capsys.readouterr().out == ""


class TestCompare:
    def test_identical(self, fig3_path, capsys):
        assert main(["compare", str(fig3_path), str(fig3_path)]) == 0
        assert capsys.readouterr().out == "0.00\n"

    def test_two_feature_example(self, fig4_docs, capsys):
        a, b = fig4_docs
        assert main(["compare", str(a), str(b)]) == 0
        assert capsys.readouterr().out == "3.61\n"

    def test_metric_and_precision(self, fig4_docs, capsys):
        a, b = fig4_docs
        assert main(["compare", str(a), str(b), "--metric", "dice", "--precision", "4"]) == 0
        # 2*34 / (20 + 61)
        assert capsys.readouterr().out == f"{68 / 81:.4f}\n"

    def test_stored_vectors(self, tmp_path, capsys):
        a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
        save_vectors([FeatureVector("a", 1, {"x": 4, "y": 2})], a)
        save_vectors([FeatureVector("b", 1, {"x": 6, "y": 5})], b)
        assert main(["compare", str(a), str(b)]) == 0
        assert capsys.readouterr().out == "3.61\n"

    def test_stored_order_mismatch(self, tmp_path, capsys):
        a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
        save_vectors([FeatureVector("a", 1, {"x": 1})], a)
        save_vectors([FeatureVector("b", 2, {"x y": 1})], b)
        assert main(["compare", str(a), str(b)]) == 2
        assert "order" in capsys.readouterr().err

    def test_requested_order_differs_from_store(self, tmp_path, fig3_path):
        a = tmp_path / "a.tsv"
        save_vectors([FeatureVector("a", 1, {"x": 1})], a)
        assert main(["compare", str(a), str(fig3_path), "--n", "2"]) == 2

    def test_bad_metric(self, fig4_docs):
        a, b = fig4_docs
        assert main(["compare", str(a), str(b), "--metric", "manhattan"]) == 2

    def test_help_mentions_worked_example(self, capsys):
        assert main(["compare", "--help"]) == 0
        assert "3.61" in capsys.readouterr().out


class TestMatrixAndReport:
    def test_matrix_csv(self, synthetic_corpus, capsys):
        assert main(["matrix", str(synthetic_corpus), "--n", "1"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 11
        assert lines[0].startswith("doc_id,doc00,")

    def test_matrix_several_orders(self, synthetic_corpus, capsys):
        assert main(["matrix", str(synthetic_corpus), "--n", "1,2", "--rows", "doc00,doc01"]) == 0
        blocks = capsys.readouterr().out.split("\n\n")
        assert [b.splitlines()[0].split(",")[0] for b in blocks] == ["n=1", "n=2"]

    def test_matrix_json(self, synthetic_corpus, capsys):
        assert main(["matrix", str(synthetic_corpus), "--n", "2", "--metric", "cosine", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["metric"] == "cosine" and data["n"] == 2

    def test_matrix_json_several_orders(self, synthetic_corpus, capsys):
        assert main(["matrix", str(synthetic_corpus), "--n", "1,2", "--format", "json"]) == 0
        assert [m["n"] for m in json.loads(capsys.readouterr().out)] == [1, 2]

    def test_report_winner_column(self, synthetic_corpus, capsys):
        assert main(["report", str(synthetic_corpus), "--n", "1,2", "--exclude-self"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].endswith(",winner")
        assert len(lines) == 11

    def test_report_deterministic(self, synthetic_corpus, tmp_path):
        first, second = tmp_path / "r1.csv", tmp_path / "r2.csv"
        assert main(["report", str(synthetic_corpus), "--out", str(first)]) == 0
        assert main(["report", str(synthetic_corpus), "--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_report_single_order_is_usage_error(self, synthetic_corpus):
        assert main(["report", str(synthetic_corpus), "--n", "2"]) == 2

    def test_nonexistent_dir(self, tmp_path, capsys):
        assert main(["report", str(tmp_path / "nope")]) == 1
        assert "not found" in capsys.readouterr().err

    def test_unknown_row_id(self, synthetic_corpus):
        assert main(["matrix", str(synthetic_corpus), "--rows", "ghost"]) == 1

    def test_skip_bad(self, synthetic_corpus, capsys):
        (synthetic_corpus / "zz.txt").write_bytes(b"\xff")
        assert main(["matrix", str(synthetic_corpus)]) == 1
        assert main(["matrix", str(synthetic_corpus), "--skip-bad"]) == 0


def test_no_subcommand_is_usage_error():
    assert main([]) == 2


def test_module_entry_point(fig3_path):
    proc = subprocess.run(
        [sys.executable, "-m", "igbosim", "preprocess", str(fig3_path)], capture_output=True, check=False
    )
    assert proc.returncode == 0
    assert len(proc.stdout.decode("utf-8").splitlines()) == 35
