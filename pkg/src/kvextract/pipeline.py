"""End-to-end orchestration: corpus -> phrases -> questions -> reader -> pairs.

Documents are independent work units dispatched to a bounded thread pool.
Output is sorted by (document id, sentence id, entity offset) before being
returned, so runs at any parallelism produce identical results with a
deterministic reader. The no-phrase ablation mode skips phrase generation
and forward questions entirely; every entity goes straight to the reverse
fallback question.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from kvextract.association import ExtractionPair, SentenceDiagnostics, associate
from kvextract.corpus import Document
from kvextract.phrases import all_phrases
from kvextract.questions import forward_questions
from kvextract.reader import Reader, ReaderKind, ReaderSpec, RemoteReader, build_reader


class PipelineError(RuntimeError):
    """Unrecoverable pipeline failure (bad config, unreachable reader)."""


@dataclass(frozen=True)
class PipelineConfig:
    reader: ReaderSpec
    ablation_no_phrases: bool = False
    parallelism: int = 1
    diagnostics_path: str | Path | None = None

    def validate(self) -> None:
        if self.parallelism < 1:
            raise PipelineError(f"parallelism must be >= 1, got {self.parallelism}")
        try:
            self.reader.validate()
        except ValueError as exc:
            raise PipelineError(str(exc)) from exc


@dataclass
class Diagnostics:
    """Run-level accounting, kept in memory and optionally written to disk."""

    documents: int = 0
    sentences: int = 0
    entities: int = 0
    pairs: int = 0
    forward_questions: int = 0
    reverse_questions: int = 0
    reverse_discarded_empty: int = 0
    reverse_discarded_entity_overlap: int = 0
    reader_errors: int = 0
    ablation_no_phrases: bool = False
    per_sentence: list[SentenceDiagnostics] = field(default_factory=list)

    def absorb(self, sentence: SentenceDiagnostics) -> None:
        self.sentences += 1
        self.entities += sentence.entity_count
        self.pairs += sentence.pairs
        self.forward_questions += sentence.forward_questions
        self.reverse_questions += sentence.reverse_questions
        self.reverse_discarded_empty += sentence.reverse_discarded_empty
        self.reverse_discarded_entity_overlap += sentence.reverse_discarded_entity_overlap
        self.reader_errors += sentence.reader_errors
        self.per_sentence.append(sentence)

    def to_json(self) -> dict:
        payload = {k: v for k, v in self.__dict__.items() if k != "per_sentence"}
        payload["per_sentence"] = [s.to_json() for s in self.per_sentence]
        return payload


def _process_document(doc: Document, reader: Reader,
                      ablation: bool) -> tuple[list[ExtractionPair], list[SentenceDiagnostics]]:
    pairs: list[ExtractionPair] = []
    rows: list[SentenceDiagnostics] = []
    for s in doc.sentences:
        row = SentenceDiagnostics()
        if ablation:
            pairs.extend(associate(s, [], [], reader, row))
        else:
            phrases = all_phrases(s)
            questions = forward_questions(s, phrases)
            pairs.extend(associate(s, phrases, questions, reader, row))
        rows.append(row)
    return pairs, rows


def run(docs: Sequence[Document], cfg: PipelineConfig) -> tuple[list[ExtractionPair], Diagnostics]:
    """Extract pairs from every document under the given configuration."""
    cfg.validate()
    reader = build_reader(cfg.reader, docs)
    if isinstance(reader, RemoteReader):
        try:
            reader.preflight()
        except Exception as exc:
            raise PipelineError(str(exc)) from exc

    diagnostics = Diagnostics(ablation_no_phrases=cfg.ablation_no_phrases)
    diagnostics.documents = len(docs)

    results: list[tuple[list[ExtractionPair], list[SentenceDiagnostics]]]
    if cfg.parallelism == 1 or len(docs) <= 1:
        results = [_process_document(d, reader, cfg.ablation_no_phrases) for d in docs]
    else:
        with ThreadPoolExecutor(max_workers=cfg.parallelism) as pool:
            futures = [pool.submit(_process_document, d, reader, cfg.ablation_no_phrases)
                       for d in docs]
            results = [f.result() for f in futures]

    pairs: list[ExtractionPair] = []
    for doc_pairs, rows in results:
        pairs.extend(doc_pairs)
        for row in rows:
            diagnostics.absorb(row)

    pairs.sort(key=lambda p: (p.document_id, p.sentence_id, p.entity.char_start))
    diagnostics.per_sentence.sort(key=lambda d: (d.document_id, d.sentence_id))

    if cfg.diagnostics_path is not None:
        with open(cfg.diagnostics_path, "w", encoding="utf-8") as fh:
            json.dump(diagnostics.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return pairs, diagnostics


_KNOWN_KINDS = {k.value for k in ReaderKind}


def config_from_dict(raw: dict) -> PipelineConfig:
    """Build a PipelineConfig from a JSON-shaped dictionary."""
    reader_raw = raw.get("reader", {})
    kind_name = str(reader_raw.get("kind", "FIXTURE")).upper().replace("-", "_")
    if kind_name not in _KNOWN_KINDS:
        raise PipelineError(f"unknown reader kind {reader_raw.get('kind')!r}")
    spec = ReaderSpec(
        kind=ReaderKind(kind_name),
        endpoint=reader_raw.get("endpoint"),
        fixture_path=reader_raw.get("fixture_path"),
        timeout=float(reader_raw.get("timeout", 10.0)),
        retries=int(reader_raw.get("retries", 2)),
        max_in_flight=int(reader_raw.get("max_in_flight", 8)),
    )
    return PipelineConfig(
        reader=spec,
        ablation_no_phrases=bool(raw.get("ablation_no_phrases", False)),
        parallelism=int(raw.get("parallelism", 1)),
        diagnostics_path=raw.get("diagnostics_path"),
    )
