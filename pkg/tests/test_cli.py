from __future__ import annotations

import json

import pytest

from kvextract.cli import main
from kvextract.corpus import load_corpus


def _extract_args(data_dir, out, extra=()):
    return ["extract",
            "--in", str(data_dir / "walkthrough.jsonl"),
            "--reader", "fixture",
            "--fixture", str(data_dir / "reader_fixture.jsonl"),
            "--out", str(out), *extra]


def test_stats_prints_entities_per_sentence(data_dir, capsys):
    assert main(["stats", "--in", str(data_dir / "walkthrough.jsonl")]) == 0
    captured = capsys.readouterr().out
    assert "entities per sentence" in captured
    assert "2.000" in captured


def test_stats_json_output(data_dir, tmp_path, capsys):
    out = tmp_path / "stats.json"
    assert main(["stats", "--in", str(data_dir / "walkthrough.jsonl"),
                 "--json", str(out)]) == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["entities_per_sentence"] == pytest.approx(2.0)


def test_extract_writes_pairs(data_dir, tmp_path, capsys):
    out = tmp_path / "pairs.jsonl"
    assert main(_extract_args(data_dir, out)) == 0
    rows = [json.loads(line) for line in out.read_text(encoding="utf-8").splitlines()]
    assert [(r["sentence_id"], r["entity"], r["key"]) for r in rows] == [
        ("s1", "$33,000", "borrowing capacity on revolving credit loan"),
        ("s1", "$60,000 to $93,000", "available credit facility"),
        ("s2", "13-24 or 25-36", "loan is paid during months"),
    ]


def test_extract_is_idempotent(data_dir, tmp_path, capsys):
    out = tmp_path / "pairs.jsonl"
    assert main(_extract_args(data_dir, out, ["--parallelism", "4"])) == 0
    first = out.read_bytes()
    assert main(_extract_args(data_dir, out, ["--parallelism", "8"])) == 0
    assert out.read_bytes() == first


def test_ablate_runs(data_dir, tmp_path, capsys):
    out = tmp_path / "ablation.jsonl"
    argv = _extract_args(data_dir, out)
    argv[0] = "ablate"
    assert main(argv) == 0
    rows = [json.loads(line) for line in out.read_text(encoding="utf-8").splitlines()]
    assert rows and all(r["key_source"] == "REVERSE_ANSWER" for r in rows)


def test_extract_remote_unreachable_leaves_no_output(data_dir, tmp_path, capsys):
    out = tmp_path / "pairs.jsonl"
    code = main(["extract", "--in", str(data_dir / "walkthrough.jsonl"),
                 "--reader", "remote", "--endpoint", "http://127.0.0.1:9",
                 "--timeout", "0.5", "--out", str(out)])
    assert code == 2
    assert not out.exists()


def test_evaluate_perfect_predictions(data_dir, tmp_path, capsys):
    docs = load_corpus(data_dir / "walkthrough.jsonl")
    pred_path = tmp_path / "pred.jsonl"
    with open(pred_path, "w", encoding="utf-8") as fh:
        for g in docs[0].gold:
            fh.write(json.dumps({"sentence_id": g.sentence_id, "entity": g.entity_text,
                                 "key": g.keys[0]}) + "\n")
    report_path = tmp_path / "report.json"
    code = main(["evaluate", "--pred", str(pred_path),
                 "--gold", str(data_dir / "walkthrough.jsonl"),
                 "--report", str(report_path)])
    assert code == 0
    assert "1.0000" in capsys.readouterr().out
    payload = json.loads(report_path.read_text(encoding="utf-8"))
    assert payload["overall_accuracy"] == 1.0


def test_evaluate_pipeline_output(data_dir, tmp_path, capsys):
    out = tmp_path / "pairs.jsonl"
    assert main(_extract_args(data_dir, out)) == 0
    code = main(["evaluate", "--pred", str(out),
                 "--gold", str(data_dir / "walkthrough.jsonl")])
    assert code == 0
    text = capsys.readouterr().out
    # 2 correct, 1 partial, 3 incorrect over 6 labeled entities
    assert "0.4167" in text


def test_usage_error_exits_one(data_dir, capsys):
    assert main(["extract", "--in", str(data_dir / "walkthrough.jsonl")]) == 1
    assert main(["frobnicate"]) == 1
    assert main(["extract", "--bogus-flag"]) == 1


def test_missing_input_exits_two(tmp_path, capsys):
    code = main(["stats", "--in", str(tmp_path / "missing.jsonl")])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_config_file_supplies_reader(data_dir, tmp_path, capsys):
    cfg = {"reader": {"kind": "fixture",
                      "fixture_path": str(data_dir / "reader_fixture.jsonl")},
           "parallelism": 2}
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg), encoding="utf-8")
    out = tmp_path / "pairs.jsonl"
    code = main(["extract", "--in", str(data_dir / "walkthrough.jsonl"),
                 "--config", str(cfg_path), "--out", str(out)])
    assert code == 0
    assert out.exists()


def test_reader_endpoint_env_fallback(data_dir, tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("READER_ENDPOINT", "http://127.0.0.1:9")
    out = tmp_path / "pairs.jsonl"
    code = main(["extract", "--in", str(data_dir / "walkthrough.jsonl"),
                 "--reader", "remote", "--timeout", "0.5", "--out", str(out)])
    assert code == 2  # endpoint resolved from the environment, then unreachable
