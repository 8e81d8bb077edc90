"""Simple and complex noun-phrase generation over dependency parses.

A simple phrase is a noun (or pronoun) in subject/object position together
with its compound and adjective modifiers; a bare noun with no qualifying
modifier yields no phrase. A complex phrase starts from a preposition whose
head is nominal and stitches together the noun phrases on both sides of it.
Phrases that touch an entity token are suppressed: entities are the values
being described, not descriptions.

All functions are pure; identical input sentences produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from kvextract.corpus import Dep, ParsedSentence, Pos, Token

NOMINAL_POS = frozenset({Pos.NOUN, Pos.PROPN, Pos.PRON})
# pobj counts as an object position: prepositional objects are where financial
# sentences park most of their describable nouns.
ARGUMENT_DEPS = frozenset({Dep.SUBJ, Dep.OBJ, Dep.PREP_OBJ})


class PhraseKind(str, Enum):
    SIMPLE = "SIMPLE"
    COMPLEX = "COMPLEX"


@dataclass(frozen=True)
class NounPhrase:
    """A candidate description: contributing tokens in sentence order.

    ``head_index`` is the governing noun for SIMPLE phrases and the
    preposition for COMPLEX ones. ``order_rank`` is the generation sequence
    number (all SIMPLE phrases precede all COMPLEX ones).
    """

    text: str
    kind: PhraseKind
    token_indices: tuple[int, ...]
    head_index: int
    order_rank: int


def _modifiers(s: ParsedSentence, head_index: int) -> list[Token]:
    """Compound or adjective children of a token, in sentence order."""
    return [t for t in s.children_of(head_index)
            if t.pos is Pos.ADJ or t.deprel is Dep.COMPOUND]


def _build(s: ParsedSentence, indices: set[int], kind: PhraseKind, head_index: int,
           rank: int) -> NounPhrase:
    ordered = tuple(sorted(indices))
    text = " ".join(s.tokens[i].text for i in ordered)
    return NounPhrase(text=text, kind=kind, token_indices=ordered,
                      head_index=head_index, order_rank=rank)


def simple_phrases(s: ParsedSentence) -> list[NounPhrase]:
    """Noun-plus-modifier phrases for nominal tokens in subject/object position."""
    blocked = s.entity_token_indices()
    out: list[NounPhrase] = []
    for token in s.tokens:
        if token.pos not in NOMINAL_POS or token.deprel not in ARGUMENT_DEPS:
            continue
        mods = _modifiers(s, token.index)
        if not mods:
            continue  # the head joins only a phrase that already has content
        indices = {m.index for m in mods} | {token.index}
        if indices & blocked:
            continue
        out.append(_build(s, indices, PhraseKind.SIMPLE, token.index, len(out)))
    return out


def complex_phrases(s: ParsedSentence) -> list[NounPhrase]:
    """Preposition-joined phrases: left noun phrase, preposition, right noun phrases."""
    blocked = s.entity_token_indices()
    out: list[NounPhrase] = []
    for token in s.tokens:
        if token.pos is not Pos.ADP:
            continue
        head = s.tokens[token.head]
        if head.index == token.index or head.pos not in NOMINAL_POS:
            continue
        indices = {m.index for m in _modifiers(s, head.index)}
        indices |= {head.index, token.index}
        for right in s.children_of(token.index):
            if right.index > token.index and right.pos in NOMINAL_POS:
                indices |= {m.index for m in _modifiers(s, right.index)}
                indices.add(right.index)
        if len(indices) < 2:
            continue
        if indices & blocked:
            continue
        out.append(_build(s, indices, PhraseKind.COMPLEX, token.index, len(out)))
    return out


def all_phrases(s: ParsedSentence) -> list[NounPhrase]:
    """Simple then complex phrases, deduplicated by exact text, ranked 0..n-1."""
    seen: set[str] = set()
    ranked: list[NounPhrase] = []
    for phrase in simple_phrases(s) + complex_phrases(s):
        if phrase.text in seen:
            continue
        seen.add(phrase.text)
        ranked.append(replace(phrase, order_rank=len(ranked)))
    return ranked
