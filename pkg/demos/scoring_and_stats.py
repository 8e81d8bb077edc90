#!/usr/bin/env python3
"""Score the pipeline against the bundled gold labels, with and without
phrase generation, and print corpus statistics.

    python3 demos/scoring_and_stats.py
"""

from pathlib import Path

from kvextract import (
    PipelineConfig,
    ReaderKind,
    ReaderSpec,
    corpus_stats,
    evaluate_extractions,
    load_corpus,
    run,
)
from kvextract.evaluation import predictions_from_pairs

DATA = Path(__file__).resolve().parent.parent / "data"


def main() -> None:
    docs = load_corpus(DATA / "walkthrough.jsonl")
    reader = ReaderSpec(kind=ReaderKind.FIXTURE,
                        fixture_path=DATA / "reader_fixture.jsonl")

    print(corpus_stats(docs).format_text())
    print()

    for label, ablation in (("full pipeline", False), ("no-phrase ablation", True)):
        pairs, diagnostics = run(docs, PipelineConfig(reader=reader,
                                                      ablation_no_phrases=ablation))
        report = evaluate_extractions(docs, predictions_from_pairs(pairs))
        print("=" * 72)
        print(f"{label}: {len(pairs)} pairs, "
              f"{diagnostics.forward_questions} forward / "
              f"{diagnostics.reverse_questions} reverse questions")
        print()
        print(report.format_text())
        print()


if __name__ == "__main__":
    main()
