"""Document/sentence/entity data model, corpus ingestion, and dataset statistics.

Two on-disk formats are supported:

* ``parsed-jsonl``: one JSON object per sentence, carrying tokens (with POS,
  dependency head/relation, character offsets), entity mentions, and optional
  gold labels. Documents are grouped by ``document_id``.
* ``conllu-plus``: CoNLL-U token lines plus a per-sentence
  ``# entities = <JSON array>`` comment; gold labels live in a sibling
  ``<stem>.gold.jsonl`` file keyed by sentence id.

All offsets are character-based, half-open, relative to the sentence text.
Documents are immutable after loading and safe to share across threads.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence


class Pos(str, Enum):
    """Coarse part-of-speech tags retained by the pipeline."""

    NOUN = "NOUN"
    PROPN = "PROPN"
    PRON = "PRON"
    ADJ = "ADJ"
    ADP = "ADP"
    VERB = "VERB"
    NUM = "NUM"
    OTHER = "OTHER"


class Dep(str, Enum):
    """Normalized dependency relations.

    Upstream parsers emit dozens of labels; the phrase extractor only needs to
    know whether a token sits in subject/object position, is a prepositional
    object, or compounds with its head. Everything else is OTHER.
    """

    SUBJ = "SUBJ"
    OBJ = "OBJ"
    COMPOUND = "COMPOUND"
    PREP_OBJ = "PREP_OBJ"
    OTHER = "OTHER"


class EntityType(str, Enum):
    """Closed set of value-like entity types kept at ingestion.

    Enumeration order is meaningful: question generation iterates types in
    this order when a sentence carries several.
    """

    MONEY = "MONEY"
    PERCENT = "PERCENT"
    DATE = "DATE"
    TIME = "TIME"
    CARDINAL = "CARDINAL"
    ORDINAL = "ORDINAL"
    QUANTITY = "QUANTITY"


_SUBJ_RAW = {"nsubj", "nsubjpass", "csubj"}
_OBJ_RAW = {"dobj", "obj", "iobj", "attr"}
_PREP_OBJ_RAW = {"pobj"}
_COMPOUND_RAW = {"compound", "nn"}


def normalize_deprel(raw: str) -> Dep:
    """Map a raw parser relation label onto the closed Dep set.

    Already-normalized labels pass through. Universal-Dependencies subtype
    suffixes (``nsubj:pass``) are stripped before matching.
    """
    label = raw.strip()
    if label in Dep._value2member_map_:
        return Dep(label)
    base = label.lower().split(":", 1)[0]
    if base in _SUBJ_RAW or base == "nsubj_pass":
        return Dep.SUBJ
    if base in _OBJ_RAW:
        return Dep.OBJ
    if base in _PREP_OBJ_RAW:
        return Dep.PREP_OBJ
    if base in _COMPOUND_RAW:
        return Dep.COMPOUND
    return Dep.OTHER


def normalize_pos(raw: str) -> Pos:
    """Map a raw POS tag onto the closed Pos set (AUX folds into VERB)."""
    tag = raw.strip().upper()
    if tag in Pos._value2member_map_:
        return Pos(tag)
    if tag == "AUX":
        return Pos.VERB
    return Pos.OTHER


@dataclass(frozen=True)
class Token:
    """One token of a parsed sentence.

    ``head`` is the index of the dependency head; the root token points at
    itself. ``char_start``/``char_end`` index into the sentence text.
    """

    index: int
    text: str
    pos: Pos
    head: int
    deprel: Dep
    char_start: int
    char_end: int


@dataclass(frozen=True)
class EntityMention:
    """A typed value span (money, percent, date, ...) awaiting a description."""

    sentence_id: str
    char_start: int
    char_end: int
    text: str
    etype: EntityType


@dataclass(frozen=True)
class GoldLabel:
    """Gold description keys for one labeled entity; a value may carry several."""

    sentence_id: str
    entity_text: str
    entity_char_start: int
    keys: tuple[str, ...]


@dataclass(frozen=True)
class ParsedSentence:
    """A parsed, entity-tagged sentence: the substrate for phrase generation."""

    sentence_id: str
    document_id: str
    text: str
    tokens: tuple[Token, ...]
    entities: tuple[EntityMention, ...] = ()

    def children_of(self, index: int) -> list[Token]:
        """Tokens whose dependency head is ``index`` (excluding the root's self-link)."""
        return [t for t in self.tokens if t.head == index and t.index != index]

    def root_index(self) -> int:
        for t in self.tokens:
            if t.head == t.index:
                return t.index
        raise ValueError(f"sentence {self.sentence_id!r} has no root token")

    def entity_token_indices(self) -> frozenset[int]:
        """Indices of tokens overlapping any entity span."""
        covered: set[int] = set()
        for e in self.entities:
            for t in self.tokens:
                if t.char_start < e.char_end and t.char_end > e.char_start:
                    covered.add(t.index)
        return frozenset(covered)

    def entity_token_range(self, entity: EntityMention) -> tuple[int, int]:
        """Inclusive (first, last) token indices covered by an entity span."""
        covered = [
            t.index
            for t in self.tokens
            if t.char_start < entity.char_end and t.char_end > entity.char_start
        ]
        if not covered:
            raise ValueError(
                f"entity {entity.text!r} covers no tokens in sentence {self.sentence_id!r}"
            )
        return covered[0], covered[-1]


@dataclass(frozen=True)
class Document:
    """An ordered group of sentences (one source paragraph/filing section)."""

    document_id: str
    sentences: tuple[ParsedSentence, ...]
    gold: tuple[GoldLabel, ...] = ()


class CorpusError(ValueError):
    """Schema violation or I/O problem while reading a corpus file.

    Carries enough context (file, line, field) to locate the bad record.
    """

    def __init__(self, message: str, *, path: str | Path | None = None,
                 line: int | None = None, fieldname: str | None = None):
        self.path = str(path) if path is not None else None
        self.line = line
        self.fieldname = fieldname
        where = ""
        if self.path is not None:
            where = self.path
            if line is not None:
                where += f":{line}"
            where += ": "
        what = f"field {fieldname!r}: " if fieldname else ""
        super().__init__(f"{where}{what}{message}")


# ---------------------------------------------------------------------------
# validation

def _validate_sentence(s: ParsedSentence, *, path: str | Path | None = None,
                       line: int | None = None) -> None:
    n = len(s.tokens)
    if not s.sentence_id:
        raise CorpusError("empty sentence_id", path=path, line=line, fieldname="sentence_id")
    roots = 0
    prev_end = 0
    for i, t in enumerate(s.tokens):
        if t.index != i:
            raise CorpusError(f"token index {t.index} at position {i} is out of order",
                              path=path, line=line, fieldname="tokens.i")
        if not (0 <= t.head < n):
            raise CorpusError(f"token {i} head {t.head} outside sentence of {n} tokens",
                              path=path, line=line, fieldname="tokens.head")
        if t.head == t.index:
            roots += 1
        if not (0 <= t.char_start < t.char_end <= len(s.text)):
            raise CorpusError(f"token {i} span [{t.char_start},{t.char_end}) outside text",
                              path=path, line=line, fieldname="tokens.start")
        if t.char_start < prev_end:
            raise CorpusError(f"token {i} span overlaps or precedes the previous token",
                              path=path, line=line, fieldname="tokens.start")
        if s.text[t.char_start:t.char_end] != t.text:
            raise CorpusError(
                f"token {i} text {t.text!r} does not match sentence span "
                f"{s.text[t.char_start:t.char_end]!r}",
                path=path, line=line, fieldname="tokens.text")
        prev_end = t.char_end
    if roots != 1:
        raise CorpusError(f"expected exactly one root token, found {roots}",
                          path=path, line=line, fieldname="tokens.head")
    for e in s.entities:
        if s.text[e.char_start:e.char_end] != e.text:
            raise CorpusError(
                f"entity text {e.text!r} does not match sentence span "
                f"{s.text[e.char_start:e.char_end]!r}",
                path=path, line=line, fieldname="entities.text")
        _entity_alignment(s, e, path=path, line=line)


def _entity_alignment(s: ParsedSentence, e: EntityMention, *, path: str | Path | None,
                      line: int | None) -> None:
    # The span must start and end exactly on token boundaries; a span that
    # cuts through the middle of a token cannot be mapped to tokens.
    covered = [t for t in s.tokens
               if t.char_start < e.char_end and t.char_end > e.char_start]
    if not covered:
        raise CorpusError(f"entity {e.text!r} covers no tokens",
                          path=path, line=line, fieldname="entities.start")
    if covered[0].char_start != e.char_start or covered[-1].char_end != e.char_end:
        raise CorpusError(
            f"entity span [{e.char_start},{e.char_end}) crosses a token boundary mid-token",
            path=path, line=line, fieldname="entities.start")


def _validate_gold(g: GoldLabel, text_by_sentence: dict[str, str], *,
                   path: str | Path | None, line: int | None) -> None:
    if not g.keys:
        raise CorpusError("gold label has no keys", path=path, line=line, fieldname="gold.keys")
    text = text_by_sentence.get(g.sentence_id)
    if text is None:
        raise CorpusError(f"gold label references unknown sentence {g.sentence_id!r}",
                          path=path, line=line, fieldname="gold.sentence_id")
    end = g.entity_char_start + len(g.entity_text)
    if text[g.entity_char_start:end] != g.entity_text:
        raise CorpusError(
            f"gold entity {g.entity_text!r} not found at offset {g.entity_char_start}",
            path=path, line=line, fieldname="gold.entity_start")


# ---------------------------------------------------------------------------
# parsed-jsonl

def _require(record: dict, key: str, *, path, line) -> object:
    if key not in record:
        raise CorpusError("missing field", path=path, line=line, fieldname=key)
    return record[key]


def _sentence_from_record(record: dict, *, path, line) -> tuple[ParsedSentence, list[GoldLabel]]:
    document_id = str(_require(record, "document_id", path=path, line=line))
    sentence_id = str(_require(record, "sentence_id", path=path, line=line))
    text = _require(record, "text", path=path, line=line)
    if not isinstance(text, str):
        raise CorpusError("text must be a string", path=path, line=line, fieldname="text")

    tokens = []
    for raw in _require(record, "tokens", path=path, line=line):
        try:
            tokens.append(Token(
                index=int(raw["i"]),
                text=str(raw["text"]),
                pos=normalize_pos(str(raw["pos"])),
                head=int(raw["head"]),
                deprel=normalize_deprel(str(raw["deprel"])),
                char_start=int(raw["start"]),
                char_end=int(raw["end"]),
            ))
        except KeyError as exc:
            raise CorpusError("missing token field", path=path, line=line,
                              fieldname=f"tokens.{exc.args[0]}") from exc

    entities = []
    for raw in record.get("entities", []):
        try:
            etype_raw = str(raw["etype"]).upper()
        except KeyError as exc:
            raise CorpusError("missing entity field", path=path, line=line,
                              fieldname=f"entities.{exc.args[0]}") from exc
        if etype_raw not in EntityType._value2member_map_:
            # Types outside the closed set (PERSON, ORG, GPE, ...) are not
            # extraction targets and are dropped at ingestion.
            continue
        try:
            entities.append(EntityMention(
                sentence_id=sentence_id,
                char_start=int(raw["start"]),
                char_end=int(raw["end"]),
                text=str(raw["text"]),
                etype=EntityType(etype_raw),
            ))
        except KeyError as exc:
            raise CorpusError("missing entity field", path=path, line=line,
                              fieldname=f"entities.{exc.args[0]}") from exc

    gold = []
    for raw in record.get("gold") or []:
        try:
            gold.append(GoldLabel(
                sentence_id=sentence_id,
                entity_text=str(raw["entity_text"]),
                entity_char_start=int(raw["entity_start"]),
                keys=tuple(str(k) for k in raw["keys"]),
            ))
        except KeyError as exc:
            raise CorpusError("missing gold field", path=path, line=line,
                              fieldname=f"gold.{exc.args[0]}") from exc

    sentence = ParsedSentence(
        sentence_id=sentence_id,
        document_id=document_id,
        text=text,
        tokens=tuple(tokens),
        entities=tuple(entities),
    )
    _validate_sentence(sentence, path=path, line=line)
    for g in gold:
        _validate_gold(g, {sentence_id: text}, path=path, line=line)
    return sentence, gold


def _load_parsed_jsonl(path: Path) -> list[Document]:
    order: list[str] = []
    sentences: dict[str, list[ParsedSentence]] = {}
    gold: dict[str, list[GoldLabel]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw_line in enumerate(fh, start=1):
            if not raw_line.strip():
                continue
            try:
                record = json.loads(raw_line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"invalid JSON: {exc.msg}", path=path, line=lineno) from exc
            if not isinstance(record, dict):
                raise CorpusError("record is not a JSON object", path=path, line=lineno)
            sentence, labels = _sentence_from_record(record, path=path, line=lineno)
            doc_id = sentence.document_id
            if doc_id not in sentences:
                order.append(doc_id)
                sentences[doc_id] = []
                gold[doc_id] = []
            if any(s.sentence_id == sentence.sentence_id for s in sentences[doc_id]):
                raise CorpusError(f"duplicate sentence_id {sentence.sentence_id!r} in document "
                                  f"{doc_id!r}", path=path, line=lineno, fieldname="sentence_id")
            sentences[doc_id].append(sentence)
            gold[doc_id].extend(labels)
    return [Document(document_id=d, sentences=tuple(sentences[d]), gold=tuple(gold[d]))
            for d in order]


# ---------------------------------------------------------------------------
# conllu-plus

def _conllu_offsets(text: str, forms: list[str], *, path, line) -> list[tuple[int, int]]:
    """Recover character offsets by matching forms left-to-right against the text."""
    spans = []
    cursor = 0
    for form in forms:
        start = text.find(form, cursor)
        if start < 0:
            raise CorpusError(f"token {form!r} not found in sentence text",
                              path=path, line=line, fieldname="text")
        spans.append((start, start + len(form)))
        cursor = start + len(form)
    return spans


def _load_conllu_plus(path: Path) -> list[Document]:
    docs_order: list[str] = []
    doc_sentences: dict[str, list[ParsedSentence]] = {}
    current_doc = path.stem

    meta: dict[str, str] = {}
    rows: list[tuple[int, list[str]]] = []
    sentence_count = 0

    def flush(end_line: int) -> None:
        nonlocal meta, rows, sentence_count, current_doc
        if not rows and not meta:
            return
        if not rows:
            raise CorpusError("sentence block has metadata but no tokens",
                              path=path, line=end_line)
        sentence_count += 1
        text = meta.get("text")
        if text is None:
            raise CorpusError("missing '# text =' comment", path=path, line=end_line,
                              fieldname="text")
        sent_id = meta.get("sent_id", f"{current_doc}-{sentence_count}")

        forms, poss, heads, deprels, misc = [], [], [], [], []
        for lineno, cols in rows:
            if len(cols) < 10:
                raise CorpusError(f"expected 10 CoNLL-U columns, found {len(cols)}",
                                  path=path, line=lineno)
            if "-" in cols[0] or "." in cols[0]:
                continue  # multiword-token and empty-node lines carry no parse info here
            forms.append(cols[1])
            poss.append(cols[3])
            heads.append(cols[6])
            deprels.append(cols[7])
            misc.append(cols[9])

        spans: list[tuple[int, int]] = []
        if misc and all("start_char=" in m for m in misc):
            for m in misc:
                fields = dict(kv.split("=", 1) for kv in m.split("|") if "=" in kv)
                spans.append((int(fields["start_char"]), int(fields["end_char"])))
        else:
            spans = _conllu_offsets(text, forms, path=path, line=end_line)

        tokens = []
        for i, form in enumerate(forms):
            try:
                head_raw = int(heads[i])
            except ValueError as exc:
                raise CorpusError(f"non-integer HEAD {heads[i]!r}", path=path,
                                  line=end_line, fieldname="head") from exc
            head = i if head_raw == 0 else head_raw - 1  # CoNLL-U heads are 1-based, 0 = root
            tokens.append(Token(
                index=i, text=form, pos=normalize_pos(poss[i]), head=head,
                deprel=normalize_deprel(deprels[i]),
                char_start=spans[i][0], char_end=spans[i][1],
            ))

        entities = []
        if "entities" in meta:
            try:
                raw_entities = json.loads(meta["entities"])
            except json.JSONDecodeError as exc:
                raise CorpusError(f"invalid entities JSON: {exc.msg}", path=path,
                                  line=end_line, fieldname="entities") from exc
            for raw in raw_entities:
                etype_raw = str(raw.get("etype", "")).upper()
                if etype_raw not in EntityType._value2member_map_:
                    continue
                entities.append(EntityMention(
                    sentence_id=sent_id, char_start=int(raw["start"]),
                    char_end=int(raw["end"]), text=str(raw["text"]),
                    etype=EntityType(etype_raw),
                ))

        sentence = ParsedSentence(sentence_id=sent_id, document_id=current_doc,
                                  text=text, tokens=tuple(tokens), entities=tuple(entities))
        _validate_sentence(sentence, path=path, line=end_line)
        if current_doc not in doc_sentences:
            docs_order.append(current_doc)
            doc_sentences[current_doc] = []
        doc_sentences[current_doc].append(sentence)
        meta, rows = {}, []

    lineno = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, raw_line in enumerate(fh, start=1):
            stripped = raw_line.rstrip("\n")
            if not stripped.strip():
                flush(lineno)
                continue
            if stripped.startswith("#"):
                body = stripped[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    key = key.strip()
                    value = value.strip()
                    if key == "newdoc id":
                        flush(lineno)
                        current_doc = value
                    else:
                        meta[key] = value
                continue
            rows.append((lineno, stripped.split("\t")))
        flush(lineno)

    gold_by_sentence: dict[str, list[GoldLabel]] = {}
    gold_path = path.with_name(path.stem + ".gold.jsonl")
    if gold_path.exists():
        text_by_sentence = {s.sentence_id: s.text
                            for sents in doc_sentences.values() for s in sents}
        with open(gold_path, encoding="utf-8") as fh:
            for lineno, raw_line in enumerate(fh, start=1):
                if not raw_line.strip():
                    continue
                try:
                    record = json.loads(raw_line)
                except json.JSONDecodeError as exc:
                    raise CorpusError(f"invalid JSON: {exc.msg}", path=gold_path,
                                      line=lineno) from exc
                try:
                    label = GoldLabel(
                        sentence_id=str(record["sentence_id"]),
                        entity_text=str(record["entity_text"]),
                        entity_char_start=int(record["entity_start"]),
                        keys=tuple(str(k) for k in record["keys"]),
                    )
                except KeyError as exc:
                    raise CorpusError("missing gold field", path=gold_path, line=lineno,
                                      fieldname=str(exc.args[0])) from exc
                _validate_gold(label, text_by_sentence, path=gold_path, line=lineno)
                gold_by_sentence.setdefault(label.sentence_id, []).append(label)

    docs = []
    for doc_id in docs_order:
        sents = doc_sentences[doc_id]
        gold = tuple(g for s in sents for g in gold_by_sentence.get(s.sentence_id, []))
        docs.append(Document(document_id=doc_id, sentences=tuple(sents), gold=gold))
    return docs


# ---------------------------------------------------------------------------
# public API

CORPUS_FORMATS = ("parsed-jsonl", "conllu-plus")


def load_corpus(path: str | Path, format: str = "parsed-jsonl") -> list[Document]:
    """Load and validate a corpus file; malformed records raise CorpusError."""
    p = Path(path)
    if format not in CORPUS_FORMATS:
        raise ValueError(f"unknown corpus format {format!r}; expected one of {CORPUS_FORMATS}")
    if not p.exists():
        raise CorpusError("file not found", path=p)
    if format == "parsed-jsonl":
        return _load_parsed_jsonl(p)
    return _load_conllu_plus(p)


def sentence_to_record(s: ParsedSentence, gold: Sequence[GoldLabel] = ()) -> dict:
    """Serialize one sentence (plus its gold labels) to a parsed-jsonl record."""
    record: dict = {
        "document_id": s.document_id,
        "sentence_id": s.sentence_id,
        "text": s.text,
        "tokens": [
            {"i": t.index, "text": t.text, "pos": t.pos.value, "head": t.head,
             "deprel": t.deprel.value, "start": t.char_start, "end": t.char_end}
            for t in s.tokens
        ],
        "entities": [
            {"start": e.char_start, "end": e.char_end, "text": e.text, "etype": e.etype.value}
            for e in s.entities
        ],
    }
    labels = [g for g in gold if g.sentence_id == s.sentence_id]
    if labels:
        record["gold"] = [
            {"entity_start": g.entity_char_start, "entity_text": g.entity_text,
             "keys": list(g.keys)}
            for g in labels
        ]
    return record


def write_corpus(docs: Iterable[Document], path: str | Path) -> None:
    """Write documents as parsed-jsonl (the canonical serialization)."""
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            for s in doc.sentences:
                fh.write(json.dumps(sentence_to_record(s, doc.gold), ensure_ascii=False))
                fh.write("\n")


# ---------------------------------------------------------------------------
# statistics

_HISTOGRAM_BUCKETS = ("1", "2", "3", "4", "5", "6+")


@dataclass
class StatsReport:
    """Corpus-level statistics mirroring the dataset's published breakdowns."""

    documents: int = 0
    sentences: int = 0
    words: int = 0
    entity_counts: dict[str, int] = field(default_factory=dict)
    entities_per_sentence: float = 0.0
    words_per_sentence: float = 0.0
    words_per_paragraph: float = 0.0
    labels_per_entity: float = 0.0
    entities_per_document: float = 0.0
    sentences_by_entity_count: dict[str, int] = field(
        default_factory=lambda: {b: 0 for b in _HISTOGRAM_BUCKETS})
    words_per_sentence_by_entity_count: dict[str, float] = field(
        default_factory=lambda: {b: 0.0 for b in _HISTOGRAM_BUCKETS})

    def to_json(self) -> dict:
        return {
            "documents": self.documents,
            "sentences": self.sentences,
            "words": self.words,
            "entity_counts": dict(self.entity_counts),
            "entities_per_sentence": self.entities_per_sentence,
            "words_per_sentence": self.words_per_sentence,
            "words_per_paragraph": self.words_per_paragraph,
            "labels_per_entity": self.labels_per_entity,
            "entities_per_document": self.entities_per_document,
            "sentences_by_entity_count": dict(self.sentences_by_entity_count),
            "words_per_sentence_by_entity_count": dict(self.words_per_sentence_by_entity_count),
        }

    def format_text(self) -> str:
        lines = ["Corpus statistics", "-----------------"]
        lines.append(f"{'documents':<28}{self.documents}")
        lines.append(f"{'sentences':<28}{self.sentences}")
        lines.append(f"{'words':<28}{self.words}")
        for etype in EntityType:
            count = self.entity_counts.get(etype.value, 0)
            if count:
                lines.append(f"{'entities ' + etype.value:<28}{count}")
        lines.append(f"{'entities per sentence':<28}{self.entities_per_sentence:.3f}")
        lines.append(f"{'words per sentence':<28}{self.words_per_sentence:.2f}")
        lines.append(f"{'words per paragraph':<28}{self.words_per_paragraph:.2f}")
        lines.append(f"{'labels per entity':<28}{self.labels_per_entity:.3f}")
        lines.append(f"{'entities per document':<28}{self.entities_per_document:.2f}")
        lines.append("")
        lines.append("sentences by entity count   sentences   avg words")
        for bucket in _HISTOGRAM_BUCKETS:
            lines.append(f"{bucket:<28}{self.sentences_by_entity_count[bucket]:<12}"
                         f"{self.words_per_sentence_by_entity_count[bucket]:.2f}")
        return "\n".join(lines)


def _bucket(count: int) -> str:
    return str(count) if count <= 5 else "6+"


def corpus_stats(docs: Sequence[Document]) -> StatsReport:
    """Compute dataset statistics; an empty corpus yields all zeros."""
    report = StatsReport()
    report.documents = len(docs)

    entity_counter: Counter[str] = Counter()
    total_words = 0
    total_sentences = 0
    total_entities = 0
    total_gold_labels = 0
    total_gold_keys = 0
    bucket_sentences: Counter[str] = Counter()
    bucket_words: Counter[str] = Counter()

    for doc in docs:
        for s in doc.sentences:
            total_sentences += 1
            total_words += len(s.tokens)
            total_entities += len(s.entities)
            for e in s.entities:
                entity_counter[e.etype.value] += 1
            if s.entities:
                b = _bucket(len(s.entities))
                bucket_sentences[b] += 1
                bucket_words[b] += len(s.tokens)
        for g in doc.gold:
            total_gold_labels += 1
            total_gold_keys += len(g.keys)

    report.sentences = total_sentences
    report.words = total_words
    report.entity_counts = dict(entity_counter)
    if total_sentences:
        report.entities_per_sentence = total_entities / total_sentences
        report.words_per_sentence = total_words / total_sentences
    if report.documents:
        report.words_per_paragraph = total_words / report.documents
        report.entities_per_document = total_entities / report.documents
    if total_gold_labels:
        report.labels_per_entity = total_gold_keys / total_gold_labels
    for b in _HISTOGRAM_BUCKETS:
        report.sentences_by_entity_count[b] = bucket_sentences.get(b, 0)
        if bucket_sentences.get(b):
            report.words_per_sentence_by_entity_count[b] = bucket_words[b] / bucket_sentences[b]
    return report


def strip_entities(doc: Document) -> Document:
    """A copy of the document with entity annotations removed (parse only)."""
    return replace(doc, sentences=tuple(replace(s, entities=()) for s in doc.sentences))
