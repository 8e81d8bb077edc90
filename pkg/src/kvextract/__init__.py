"""Zero-shot key-value extraction from parsed, entity-tagged sentences.

The pipeline generates noun phrases from a dependency parse, frames them as
questions keyed on entity type, queries an extractive reading-comprehension
backend, and associates each tagged value with its best-supported description.
A scoring harness grades extractions against gold labels with a
correct/partial/incorrect taxonomy and sentence-weighted document accuracy.
"""

from kvextract.corpus import (
    Dep,
    Document,
    EntityMention,
    EntityType,
    GoldLabel,
    ParsedSentence,
    Pos,
    StatsReport,
    Token,
    corpus_stats,
    load_corpus,
    write_corpus,
)
from kvextract.phrases import NounPhrase, PhraseKind, all_phrases, complex_phrases, simple_phrases
from kvextract.questions import Question, QuestionDirection, forward_questions, prefix_for, reverse_question
from kvextract.reader import (
    FixtureReader,
    NearestEntityReader,
    Reader,
    ReaderAnswer,
    ReaderError,
    ReaderKind,
    ReaderSpec,
    RemoteReader,
    build_reader,
)
from kvextract.association import ExtractionPair, KeySource, associate, contains_entity
from kvextract.evaluation import (
    EvalReport,
    MatchKind,
    MatchResult,
    Prediction,
    aggregate,
    classify_match,
    document_accuracy,
    evaluate_extractions,
    score_documents,
)
from kvextract.pipeline import Diagnostics, PipelineConfig, PipelineError, run

__version__ = "0.1.0"

__all__ = [
    "Dep",
    "Diagnostics",
    "Document",
    "EntityMention",
    "EntityType",
    "EvalReport",
    "ExtractionPair",
    "FixtureReader",
    "GoldLabel",
    "KeySource",
    "MatchKind",
    "MatchResult",
    "NearestEntityReader",
    "NounPhrase",
    "ParsedSentence",
    "PhraseKind",
    "PipelineConfig",
    "PipelineError",
    "Pos",
    "Prediction",
    "Question",
    "QuestionDirection",
    "Reader",
    "ReaderAnswer",
    "ReaderError",
    "ReaderKind",
    "ReaderSpec",
    "RemoteReader",
    "StatsReport",
    "Token",
    "aggregate",
    "all_phrases",
    "associate",
    "build_reader",
    "classify_match",
    "complex_phrases",
    "contains_entity",
    "corpus_stats",
    "document_accuracy",
    "evaluate_extractions",
    "forward_questions",
    "load_corpus",
    "prefix_for",
    "reverse_question",
    "run",
    "score_documents",
    "simple_phrases",
    "write_corpus",
]
