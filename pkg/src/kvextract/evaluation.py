"""Scoring extractions against gold labels.

A prediction is graded against each gold key after normalization (casefold,
punctuation stripped, whitespace collapsed): exact normalized equality is a
correct match, more than 50% token overlap with the best gold key is a
partial match, anything else is incorrect. A labeled entity with no
prediction is incorrect; abstention is never rewarded. Document accuracy is
(correct + 0.5 * partial) / total, and corpus accuracy weights documents by
their sentence counts.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from kvextract.association import ExtractionPair
from kvextract.corpus import Document, GoldLabel


class MatchKind(str, Enum):
    CORRECT = "CORRECT"
    PARTIAL = "PARTIAL"
    INCORRECT = "INCORRECT"


@dataclass(frozen=True)
class MatchResult:
    """Grade for one labeled entity."""

    gold_keys: tuple[str, ...]
    predicted_key: str | None
    kind: MatchKind
    overlap: float
    gold: GoldLabel | None = None


@dataclass(frozen=True)
class Prediction:
    """The minimum a scorer needs to know about one extraction."""

    sentence_id: str
    entity_text: str
    key: str


def normalize_key(text: str) -> list[str]:
    """Casefold, strip punctuation, collapse whitespace; return tokens."""
    folded = text.casefold()
    cleaned = "".join(ch if ch.isalnum() else " " for ch in folded)
    return cleaned.split()


def _token_overlap(gold_tokens: list[str], predicted_tokens: list[str]) -> float:
    """Multiset token intersection over the gold key's token count."""
    if not gold_tokens:
        return 1.0 if not predicted_tokens else 0.0
    shared = Counter(gold_tokens) & Counter(predicted_tokens)
    return sum(shared.values()) / len(gold_tokens)


def classify_match(gold_keys: Sequence[str], predicted_key: str | None) -> MatchResult:
    """Grade a prediction against every gold key and keep the best outcome."""
    if not gold_keys:
        raise ValueError("gold_keys must be non-empty")
    keys = tuple(gold_keys)
    if predicted_key is None:
        return MatchResult(gold_keys=keys, predicted_key=None,
                           kind=MatchKind.INCORRECT, overlap=0.0)

    predicted_tokens = normalize_key(predicted_key)
    best_overlap = 0.0
    exact = False
    for key in keys:
        gold_tokens = normalize_key(key)
        if gold_tokens == predicted_tokens:
            exact = True
        best_overlap = max(best_overlap, _token_overlap(gold_tokens, predicted_tokens))
    if exact:
        return MatchResult(gold_keys=keys, predicted_key=predicted_key,
                           kind=MatchKind.CORRECT, overlap=1.0)
    # Exactly 50% overlap does not qualify as partial.
    kind = MatchKind.PARTIAL if best_overlap > 0.5 else MatchKind.INCORRECT
    return MatchResult(gold_keys=keys, predicted_key=predicted_key,
                       kind=kind, overlap=best_overlap)


def document_accuracy(correct: int, partial: int, incorrect: int) -> float:
    """(correct + 0.5 * partial) / (correct + partial + incorrect)."""
    if min(correct, partial, incorrect) < 0:
        raise ValueError("match counts must be non-negative")
    total = correct + partial + incorrect
    if total == 0:
        raise ValueError("document has no scored matches; skip it instead")
    return (correct + 0.5 * partial) / total


@dataclass(frozen=True)
class ScoredSentence:
    sentence_id: str
    entity_count: int
    matches: tuple[MatchResult, ...]


@dataclass(frozen=True)
class ScoredDocument:
    document_id: str
    sentence_count: int
    sentences: tuple[ScoredSentence, ...]

    def counts(self) -> tuple[int, int, int]:
        c = p = i = 0
        for s in self.sentences:
            for m in s.matches:
                if m.kind is MatchKind.CORRECT:
                    c += 1
                elif m.kind is MatchKind.PARTIAL:
                    p += 1
                else:
                    i += 1
        return c, p, i


@dataclass
class EvalReport:
    """Corpus scoring summary: per-document rows plus distribution statistics."""

    per_document: list[dict] = field(default_factory=list)
    overall_accuracy: float = 0.0
    mean: float = 0.0
    std: float = 0.0
    min: float = 0.0
    p25: float = 0.0
    p50: float = 0.0
    p75: float = 0.0
    max: float = 0.0
    by_entity_count: dict[str, float | None] = field(default_factory=dict)
    skipped_documents: int = 0

    def to_json(self) -> dict:
        return {
            "per_document": list(self.per_document),
            "overall_accuracy": self.overall_accuracy,
            "mean": self.mean,
            "std": self.std,
            "min": self.min,
            "p25": self.p25,
            "p50": self.p50,
            "p75": self.p75,
            "max": self.max,
            "by_entity_count": dict(self.by_entity_count),
            "skipped_documents": self.skipped_documents,
        }

    def format_text(self) -> str:
        lines = ["Extraction accuracy", "-------------------"]
        lines.append(f"{'overall accuracy':<24}{self.overall_accuracy:.4f}")
        lines.append(f"{'mean accuracy':<24}{self.mean:.4f}")
        lines.append(f"{'standard deviation':<24}{self.std:.4f}")
        lines.append(f"{'minimum accuracy':<24}{self.min:.4f}")
        lines.append(f"{'25 percentile':<24}{self.p25:.4f}")
        lines.append(f"{'50 percentile':<24}{self.p50:.4f}")
        lines.append(f"{'75 percentile':<24}{self.p75:.4f}")
        lines.append(f"{'maximum accuracy':<24}{self.max:.4f}")
        lines.append("")
        lines.append("entities per sentence   accuracy")
        for bucket, acc in self.by_entity_count.items():
            shown = f"{acc:.4f}" if acc is not None else "n/a"
            lines.append(f"{bucket:<24}{shown}")
        if self.skipped_documents:
            lines.append("")
            lines.append(f"documents skipped (nothing to score): {self.skipped_documents}")
        lines.append("")
        lines.append(f"{'document':<16}{'sentences':<11}{'correct':<9}{'partial':<9}"
                     f"{'incorrect':<11}accuracy")
        for row in self.per_document:
            lines.append(f"{row['document_id']:<16}{row['sentence_count']:<11}"
                         f"{row['correct']:<9}{row['partial']:<9}{row['incorrect']:<11}"
                         f"{row['accuracy']:.4f}")
        return "\n".join(lines)


_BUCKETS = ("1", "2", "3", "4", "5", "6+")


def _bucket_of(entity_count: int) -> str | None:
    if entity_count <= 0:
        return None
    return str(entity_count) if entity_count <= 5 else "6+"


def aggregate(scored: Sequence[ScoredDocument]) -> EvalReport:
    """Fold per-document scores into the corpus report.

    Overall accuracy weights each document by its sentence count; the
    distribution statistics are over unweighted per-document accuracies.
    Documents with nothing to score are skipped (and counted).
    """
    if not scored:
        raise ValueError("no documents to aggregate")

    report = EvalReport()
    accuracies: list[float] = []
    weights: list[int] = []
    bucket_counts: dict[str, list[int]] = {b: [0, 0, 0] for b in _BUCKETS}

    for doc in scored:
        c, p, i = doc.counts()
        if c + p + i == 0:
            report.skipped_documents += 1
            continue
        acc = document_accuracy(c, p, i)
        accuracies.append(acc)
        weights.append(doc.sentence_count)
        report.per_document.append({
            "document_id": doc.document_id,
            "sentence_count": doc.sentence_count,
            "correct": c,
            "partial": p,
            "incorrect": i,
            "accuracy": acc,
        })
        for s in doc.sentences:
            bucket = _bucket_of(s.entity_count)
            if bucket is None:
                continue
            for m in s.matches:
                if m.kind is MatchKind.CORRECT:
                    bucket_counts[bucket][0] += 1
                elif m.kind is MatchKind.PARTIAL:
                    bucket_counts[bucket][1] += 1
                else:
                    bucket_counts[bucket][2] += 1

    if not accuracies:
        raise ValueError("no scorable documents (all were skipped)")

    acc_array = np.asarray(accuracies, dtype=float)
    weight_array = np.asarray(weights, dtype=float)
    if weight_array.sum() <= 0:
        raise ValueError("scored documents have no sentences to weight by")
    report.overall_accuracy = float((acc_array * weight_array).sum() / weight_array.sum())
    report.mean = float(acc_array.mean())
    report.std = float(acc_array.std())  # population std, ddof=0
    report.min = float(acc_array.min())
    report.p25, report.p50, report.p75 = (
        float(v) for v in np.percentile(acc_array, [25, 50, 75]))
    report.max = float(acc_array.max())
    for b in _BUCKETS:
        c, p, i = bucket_counts[b]
        report.by_entity_count[b] = document_accuracy(c, p, i) if c + p + i else None
    return report


def _predictions_by_sentence(predictions: Iterable[Prediction]) -> dict[str, list[Prediction]]:
    grouped: dict[str, list[Prediction]] = {}
    for pred in predictions:
        grouped.setdefault(pred.sentence_id, []).append(pred)
    return grouped


def score_documents(docs: Sequence[Document],
                    predictions: Iterable[Prediction]) -> list[ScoredDocument]:
    """Align predictions with gold labels and grade every labeled entity.

    Matching is by (sentence id, entity surface text); each gold label
    consumes at most one prediction. Predictions for unlabeled entities are
    ignored, unlabeled corpora score nothing.
    """
    grouped = _predictions_by_sentence(predictions)
    scored: list[ScoredDocument] = []
    for doc in docs:
        gold_by_sentence: dict[str, list[GoldLabel]] = {}
        for g in doc.gold:
            gold_by_sentence.setdefault(g.sentence_id, []).append(g)
        sentences: list[ScoredSentence] = []
        for s in doc.sentences:
            labels = gold_by_sentence.get(s.sentence_id, [])
            pool = list(grouped.get(s.sentence_id, []))
            matches: list[MatchResult] = []
            for g in sorted(labels, key=lambda g: g.entity_char_start):
                chosen: Prediction | None = None
                for pred in pool:
                    if pred.entity_text == g.entity_text:
                        chosen = pred
                        break
                if chosen is not None:
                    pool.remove(chosen)
                result = classify_match(g.keys, chosen.key if chosen else None)
                matches.append(replace(result, gold=g))
            sentences.append(ScoredSentence(
                sentence_id=s.sentence_id,
                entity_count=len(s.entities),
                matches=tuple(matches)))
        scored.append(ScoredDocument(
            document_id=doc.document_id,
            sentence_count=len(doc.sentences),
            sentences=tuple(sentences)))
    return scored


def evaluate_extractions(docs: Sequence[Document],
                         predictions: Iterable[Prediction]) -> EvalReport:
    """Score a prediction set against a gold-labeled corpus."""
    return aggregate(score_documents(docs, predictions))


def predictions_from_pairs(pairs: Iterable[ExtractionPair]) -> list[Prediction]:
    return [Prediction(sentence_id=p.sentence_id, entity_text=p.entity.text, key=p.key)
            for p in pairs]


def load_predictions_jsonl(path: str | Path) -> list[Prediction]:
    """Read extraction JSONL records back as scoring inputs."""
    out: list[Prediction] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                out.append(Prediction(sentence_id=str(record["sentence_id"]),
                                      entity_text=str(record["entity"]),
                                      key=str(record["key"])))
            except (json.JSONDecodeError, KeyError) as exc:
                raise ValueError(f"{path}:{lineno}: bad prediction record: {exc}") from exc
    return out
