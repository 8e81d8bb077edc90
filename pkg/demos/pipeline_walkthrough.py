#!/usr/bin/env python3
"""Walk the extraction pipeline stage by stage on the bundled sentences.

Shows, for each sentence: the generated noun phrases, the framed questions,
the reader's answers, and the final (value -> description) pairs. Run from
the repository root:

    python3 demos/pipeline_walkthrough.py
"""

from pathlib import Path

from kvextract import (
    FixtureReader,
    all_phrases,
    associate,
    forward_questions,
    load_corpus,
)

DATA = Path(__file__).resolve().parent.parent / "data"


def main() -> None:
    docs = load_corpus(DATA / "walkthrough.jsonl") + load_corpus(DATA / "refinance.jsonl")
    reader = FixtureReader(path=DATA / "reader_fixture.jsonl")

    for doc in docs:
        for s in doc.sentences:
            print("=" * 72)
            print(s.text)
            print()
            for e in s.entities:
                print(f"  entity: {e.text!r} ({e.etype.value})")

            phrases = all_phrases(s)
            print()
            for p in phrases:
                print(f"  phrase[{p.order_rank}] ({p.kind.value.lower()}): {p.text}")
            if not phrases:
                print("  (no phrases)")

            questions = forward_questions(s, phrases)
            print()
            for q in questions:
                a = reader.answer(q, s.text)
                shown = f"{a.text!r} @ {a.confidence}" if not a.empty else "(no answer)"
                print(f"  {q.text!r} -> {shown}")

            pairs = associate(s, phrases, questions, reader)
            print()
            if pairs:
                for p in pairs:
                    print(f"  PAIR: {p.entity.text!r} -> {p.key!r}"
                          f"  [{p.key_source.value}, confidence {p.confidence}]")
            else:
                print("  no pairs extracted")
            print()


if __name__ == "__main__":
    main()
