"""Question framing: forward questions from noun phrases, reverse from entities.

The interrogative prefix follows the entity type: date-like values get
"When is", monetary values "How much is", and everything else the generic
"What is". Reverse questions always use "What is <entity> ?" and are the
fallback when no forward answer contains the entity.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from kvextract.corpus import EntityMention, EntityType, ParsedSentence
from kvextract.phrases import NounPhrase


class QuestionDirection(str, Enum):
    FORWARD = "FORWARD"
    REVERSE = "REVERSE"


@dataclass(frozen=True)
class Question:
    """An interrogative string plus the phrase or entity it was built from."""

    text: str
    direction: QuestionDirection
    target_etype: EntityType
    source_phrase: NounPhrase | None = None
    source_entity: EntityMention | None = None


_PREFIXES = {
    EntityType.DATE: "When is",
    EntityType.TIME: "When is",
    EntityType.MONEY: "How much is",
    EntityType.PERCENT: "What is",
    EntityType.CARDINAL: "What is",
    EntityType.ORDINAL: "What is",
    EntityType.QUANTITY: "What is",
}


def prefix_for(etype: EntityType) -> str:
    """Question prefix for an entity type (sentence-initial capital)."""
    try:
        return _PREFIXES[EntityType(etype)]
    except (KeyError, ValueError):
        raise ValueError(f"no question prefix for entity type {etype!r}") from None


def forward_questions(s: ParsedSentence, phrases: Sequence[NounPhrase]) -> list[Question]:
    """One question per (entity type present, phrase), deduplicated by text.

    One phrase question serves every entity of that type; the association
    step decides which entity, if any, owns the answer. Output order is
    (entity-type enumeration order, phrase rank).
    """
    present = {e.etype for e in s.entities}
    seen: set[str] = set()
    out: list[Question] = []
    for etype in EntityType:
        if etype not in present:
            continue
        for phrase in sorted(phrases, key=lambda p: p.order_rank):
            text = f"{prefix_for(etype)} {phrase.text} ?"
            if text in seen:
                continue
            seen.add(text)
            out.append(Question(text=text, direction=QuestionDirection.FORWARD,
                                target_etype=etype, source_phrase=phrase))
    return out


def reverse_question(e: EntityMention) -> Question:
    """The fallback question asked about the entity itself."""
    return Question(text=f"What is {e.text} ?", direction=QuestionDirection.REVERSE,
                    target_etype=e.etype, source_entity=e)
