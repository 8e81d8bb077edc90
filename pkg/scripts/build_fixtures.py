#!/usr/bin/env python3
"""Regenerate the fixture corpus and reader table under data/.

The dependency parses here are hand-built so that the phrase extractor
reproduces the reference phrase lists for the four walkthrough sentences.
Token offsets are computed by scanning the sentence text, and every file is
sanity-checked before being written. Run from the repository root:

    python scripts/build_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from kvextract.corpus import (  # noqa: E402
    Dep, Document, EntityMention, EntityType, GoldLabel, ParsedSentence, Pos, Token,
    load_corpus, strip_entities, write_corpus,
)
from kvextract.phrases import complex_phrases, simple_phrases  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "data"

S1_TEXT = ("In October 2019, the Company increased the borrowing capacity on the "
           "revolving credit loan by $33,000 increasing the available credit facility "
           "from $60,000 to $93,000")
S2_TEXT = ("If the loan is paid during months 13-24 or 25-36 and then a penalty of "
           "2% and 1%, respectively, of the loan balance will be charged on the date "
           "of repayment.")
S3_TEXT = ("The weighted-average remaining lease term and discount rate related to "
           "the Company's lease liabilities as of September 26, 2020 were 10.3 years "
           "and 2.0%, respectively")
R1_TEXT = "In connection with the refinance we reduced the loan amount by $6.8 million."

# (text, pos, head, deprel) per token; offsets are recovered by scanning.
S1_TOKENS = [
    ("In", "ADP", 6, "OTHER"),
    ("October", "PROPN", 0, "PREP_OBJ"),
    ("2019", "NUM", 1, "OTHER"),
    (",", "OTHER", 6, "OTHER"),
    ("the", "OTHER", 5, "OTHER"),
    ("Company", "PROPN", 6, "SUBJ"),
    ("increased", "VERB", 6, "OTHER"),
    ("the", "OTHER", 9, "OTHER"),
    ("borrowing", "NOUN", 9, "COMPOUND"),
    ("capacity", "NOUN", 6, "OBJ"),
    ("on", "ADP", 9, "OTHER"),
    ("the", "OTHER", 14, "OTHER"),
    ("revolving", "ADJ", 14, "OTHER"),
    ("credit", "NOUN", 14, "COMPOUND"),
    ("loan", "NOUN", 10, "PREP_OBJ"),
    ("by", "ADP", 6, "OTHER"),
    ("$33,000", "NUM", 15, "PREP_OBJ"),
    ("increasing", "VERB", 6, "OTHER"),
    ("the", "OTHER", 21, "OTHER"),
    ("available", "ADJ", 21, "OTHER"),
    ("credit", "NOUN", 21, "COMPOUND"),
    ("facility", "NOUN", 17, "OBJ"),
    ("from", "ADP", 17, "OTHER"),
    ("$60,000", "NUM", 22, "PREP_OBJ"),
    ("to", "ADP", 23, "OTHER"),
    ("$93,000", "NUM", 24, "PREP_OBJ"),
]

S2_TOKENS = [
    ("If", "OTHER", 4, "OTHER"),
    ("the", "OTHER", 2, "OTHER"),
    ("loan", "NOUN", 4, "SUBJ"),
    ("is", "VERB", 4, "OTHER"),
    ("paid", "VERB", 29, "OTHER"),
    ("during", "ADP", 4, "OTHER"),
    ("months", "NOUN", 5, "PREP_OBJ"),
    ("13-24", "NUM", 6, "OTHER"),
    ("or", "OTHER", 7, "OTHER"),
    ("25-36", "NUM", 7, "OTHER"),
    ("and", "OTHER", 4, "OTHER"),
    ("then", "OTHER", 29, "OTHER"),
    ("a", "OTHER", 13, "OTHER"),
    ("penalty", "NOUN", 16, "COMPOUND"),
    ("of", "OTHER", 16, "COMPOUND"),
    ("2", "NUM", 16, "OTHER"),
    ("%", "NOUN", 29, "OBJ"),
    ("and", "OTHER", 16, "OTHER"),
    ("1", "NUM", 19, "OTHER"),
    ("%", "NOUN", 16, "OTHER"),
    (",", "OTHER", 29, "OTHER"),
    ("respectively", "OTHER", 29, "OTHER"),
    (",", "OTHER", 29, "OTHER"),
    ("of", "ADP", 29, "OTHER"),
    ("the", "OTHER", 26, "OTHER"),
    ("loan", "NOUN", 26, "COMPOUND"),
    ("balance", "NOUN", 23, "PREP_OBJ"),
    ("will", "VERB", 29, "OTHER"),
    ("be", "VERB", 29, "OTHER"),
    ("charged", "VERB", 29, "OTHER"),
    ("on", "ADP", 29, "OTHER"),
    ("the", "OTHER", 32, "OTHER"),
    ("date", "NOUN", 30, "PREP_OBJ"),
    ("of", "ADP", 29, "OTHER"),
    ("repayment", "NOUN", 33, "PREP_OBJ"),
    (".", "OTHER", 29, "OTHER"),
]

S3_TOKENS = [
    ("The", "OTHER", 6, "OTHER"),
    ("weighted", "OTHER", 3, "OTHER"),
    ("-", "OTHER", 3, "OTHER"),
    ("average", "ADJ", 6, "OTHER"),
    ("remaining", "ADP", 6, "OTHER"),
    ("lease", "NOUN", 6, "COMPOUND"),
    ("term", "NOUN", 23, "SUBJ"),
    ("and", "OTHER", 6, "OTHER"),
    ("discount", "NOUN", 9, "COMPOUND"),
    ("rate", "NOUN", 23, "SUBJ"),
    ("related", "VERB", 9, "OTHER"),
    ("to", "ADP", 10, "OTHER"),
    ("the", "OTHER", 13, "OTHER"),
    ("Company", "PROPN", 16, "OTHER"),
    ("'s", "OTHER", 13, "OTHER"),
    ("lease", "NOUN", 16, "COMPOUND"),
    ("liabilities", "NOUN", 11, "PREP_OBJ"),
    ("as", "ADP", 10, "OTHER"),
    ("of", "ADP", 17, "OTHER"),
    ("September", "PROPN", 18, "PREP_OBJ"),
    ("26", "NUM", 19, "OTHER"),
    (",", "OTHER", 19, "OTHER"),
    ("2020", "NUM", 19, "OTHER"),
    ("were", "VERB", 23, "OTHER"),
    ("10.3", "NUM", 25, "OTHER"),
    ("years", "NOUN", 23, "OBJ"),
    ("and", "OTHER", 25, "OTHER"),
    ("2.0", "NUM", 28, "OTHER"),
    ("%", "NOUN", 25, "OTHER"),
    (",", "OTHER", 23, "OTHER"),
    ("respectively", "OTHER", 23, "OTHER"),
]

R1_TOKENS = [
    ("In", "ADP", 6, "OTHER"),
    ("connection", "NOUN", 0, "PREP_OBJ"),
    ("with", "ADP", 1, "OTHER"),
    ("the", "OTHER", 4, "OTHER"),
    ("refinance", "NOUN", 2, "PREP_OBJ"),
    ("we", "PRON", 6, "SUBJ"),
    ("reduced", "VERB", 6, "OTHER"),
    ("the", "OTHER", 9, "OTHER"),
    ("loan", "NOUN", 9, "COMPOUND"),
    ("amount", "NOUN", 6, "OBJ"),
    ("by", "ADP", 6, "OTHER"),
    ("$6.8", "NUM", 10, "PREP_OBJ"),
    ("million", "NUM", 11, "OTHER"),
    (".", "OTHER", 6, "OTHER"),
]


def build_sentence(sentence_id: str, document_id: str, text: str, rows: list,
                   entities: list[tuple[str, str]]) -> ParsedSentence:
    tokens = []
    cursor = 0
    for i, (surface, pos, head, deprel) in enumerate(rows):
        start = text.find(surface, cursor)
        assert start >= 0, f"{sentence_id}: token {surface!r} not found after {cursor}"
        tokens.append(Token(index=i, text=surface, pos=Pos[pos], head=head,
                            deprel=Dep[deprel], char_start=start, char_end=start + len(surface)))
        cursor = start + len(surface)
    mentions = []
    for surface, etype in entities:
        start = text.find(surface)
        assert start >= 0, f"{sentence_id}: entity {surface!r} not found"
        mentions.append(EntityMention(sentence_id=sentence_id, char_start=start,
                                      char_end=start + len(surface), text=surface,
                                      etype=EntityType[etype]))
    return ParsedSentence(sentence_id=sentence_id, document_id=document_id, text=text,
                          tokens=tuple(tokens), entities=tuple(mentions))


def build_documents() -> tuple[Document, Document]:
    s1 = build_sentence("s1", "walkthrough", S1_TEXT, S1_TOKENS,
                        [("$33,000", "MONEY"), ("$60,000 to $93,000", "MONEY")])
    s2 = build_sentence("s2", "walkthrough", S2_TEXT, S2_TOKENS,
                        [("13-24 or 25-36", "DATE"), ("2% and 1%", "PERCENT")])
    s3 = build_sentence("s3", "walkthrough", S3_TEXT, S3_TOKENS,
                        [("10.3 years", "DATE"), ("2.0%", "PERCENT")])
    walkthrough_gold = (
        GoldLabel("s1", "$33,000", S1_TEXT.find("$33,000"),
                  ("capacity on the revolving credit loan",)),
        GoldLabel("s1", "$60,000 to $93,000", S1_TEXT.find("$60,000 to $93,000"),
                  ("available credit facility",)),
        GoldLabel("s2", "13-24 or 25-36", S2_TEXT.find("13-24 or 25-36"),
                  ("loan is paid during months",)),
        GoldLabel("s2", "2% and 1%", S2_TEXT.find("2% and 1%"),
                  ("penalty of the loan balance",)),
        GoldLabel("s3", "10.3 years", S3_TEXT.find("10.3 years"),
                  ("remaining lease term",)),
        GoldLabel("s3", "2.0%", S3_TEXT.find("2.0%"),
                  ("discount rate",)),
    )
    walkthrough = Document(document_id="walkthrough", sentences=(s1, s2, s3), gold=walkthrough_gold)

    r1 = build_sentence("r1", "refinance", R1_TEXT, R1_TOKENS, [("$6.8 million", "MONEY")])
    refinance_doc = Document(document_id="refinance", sentences=(r1,),
                     gold=(GoldLabel("r1", "$6.8 million", R1_TEXT.find("$6.8 million"),
                                     ("loan amount",)),))
    return walkthrough, refinance_doc


EXPECTED_SIMPLE = {
    "s1": {"borrowing capacity", "revolving credit loan", "available credit facility"},
    "s2": {"penalty of %", "loan balance"},
    "s3": {"average lease term", "lease liabilities", "discount rate"},
    "r1": {"loan amount"},
}
EXPECTED_COMPLEX = {
    "s1": {"borrowing capacity on revolving credit loan"},
    "s2": set(),
    "s3": {"average remaining lease term"},
    "r1": {"connection with refinance"},
}


def check_phrases(walkthrough: Document, refinance_doc: Document) -> None:
    for doc in (strip_entities(walkthrough), strip_entities(refinance_doc)):
        for s in doc.sentences:
            simple = {p.text for p in simple_phrases(s)}
            complex_ = {p.text for p in complex_phrases(s)}
            assert simple == EXPECTED_SIMPLE[s.sentence_id], (s.sentence_id, simple)
            assert complex_ == EXPECTED_COMPLEX[s.sentence_id], (s.sentence_id, complex_)


def reader_rows() -> list[dict]:
    def row(question: str, context: str, answer: str, score: float,
            anchor: str | None = None) -> dict:
        # anchor pins the answer span when the answer text occurs elsewhere too
        start = context.find(anchor if anchor else answer)
        assert start >= 0
        return {"question": question, "context": context, "answer": answer,
                "score": score, "start": start, "end": start + len(answer)}

    return [
        row("How much is borrowing capacity on revolving credit loan ?", S1_TEXT,
            "$33,000", 0.946),
        row("How much is borrowing capacity ?", S1_TEXT, "$33,000", 0.824),
        row("How much is revolving credit loan ?", S1_TEXT, "$33,000", 0.856),
        row("How much is available credit facility ?", S1_TEXT,
            "$60,000 to $93,000", 0.5762),
        row("What is 13-24 or 25-36 ?", S2_TEXT, "loan is paid during months", 0.7431),
        row("What is 2% and 1% ?", S2_TEXT, "2", 0.6219, anchor="2%"),
        row("What is $33,000 ?", S1_TEXT,
            "borrowing capacity on the revolving credit loan", 0.5102),
        row("What is $60,000 to $93,000 ?", S1_TEXT, "available credit facility", 0.4873),
    ]


_DEP_TO_RAW = {Dep.SUBJ: "nsubj", Dep.OBJ: "dobj", Dep.PREP_OBJ: "pobj",
               Dep.COMPOUND: "compound", Dep.OTHER: "dep"}
_POS_TO_RAW = {Pos.OTHER: "X"}


def write_conllu(doc: Document, path: Path) -> None:
    lines = [f"# newdoc id = {doc.document_id}"]
    for s in doc.sentences:
        lines.append(f"# sent_id = {s.sentence_id}")
        lines.append(f"# text = {s.text}")
        entities = [{"start": e.char_start, "end": e.char_end, "text": e.text,
                     "etype": e.etype.value} for e in s.entities]
        lines.append(f"# entities = {json.dumps(entities)}")
        for t in s.tokens:
            head = 0 if t.head == t.index else t.head + 1
            misc = f"start_char={t.char_start}|end_char={t.char_end}"
            lines.append("\t".join([
                str(t.index + 1), t.text, "_", _POS_TO_RAW.get(t.pos, t.pos.value), "_",
                "_", str(head), _DEP_TO_RAW[t.deprel], "_", misc,
            ]))
        lines.append("")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main() -> None:
    walkthrough, refinance_doc = build_documents()
    check_phrases(walkthrough, refinance_doc)

    DATA.mkdir(exist_ok=True)
    write_corpus([walkthrough], DATA / "walkthrough.jsonl")
    write_corpus([refinance_doc], DATA / "refinance.jsonl")

    write_conllu(walkthrough, DATA / "walkthrough.conllu")
    with open(DATA / "walkthrough.gold.jsonl", "w", encoding="utf-8") as fh:
        for g in walkthrough.gold:
            fh.write(json.dumps({"sentence_id": g.sentence_id, "entity_text": g.entity_text,
                                 "entity_start": g.entity_char_start,
                                 "keys": list(g.keys)}) + "\n")

    with open(DATA / "reader_fixture.jsonl", "w", encoding="utf-8") as fh:
        for row in reader_rows():
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")

    # everything written must load back clean
    docs = load_corpus(DATA / "walkthrough.jsonl")
    assert len(docs) == 1 and len(docs[0].sentences) == 3
    docs_conllu = load_corpus(DATA / "walkthrough.conllu", "conllu-plus")
    assert docs_conllu == docs, "conllu-plus round trip diverged"
    assert load_corpus(DATA / "refinance.jsonl")[0].sentences[0].sentence_id == "r1"
    print("fixtures written to", DATA)


if __name__ == "__main__":
    main()
