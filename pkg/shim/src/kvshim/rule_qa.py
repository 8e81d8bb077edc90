"""Deterministic extractive QA over the rule parser's entity and chunk spans.

The question's interrogative prefix narrows the candidate type (when -> date,
how much -> money); the remainder of the question is the focus, anchored in
the context by exact match or by its individual words. Forward-style
questions (focus is a description) answer with the nearest value entity,
preferring spans to the right of the anchor; value-style questions (focus is
itself a value) answer with the nearest description chunk, preferring the
left. Scores decay with the character gap between anchor and answer.
"""

from __future__ import annotations

import re

from kvshim.rule_parse import ner, pos_tag, tokenize

_PREFIXES = (
    ("when is", ("DATE",)),
    ("how much is", ("MONEY",)),
    ("what is", ()),
)
_VALUE_PREFERENCE = ("PERCENT", "CARDINAL", "ORDINAL")


def _split_question(question: str) -> tuple[str, tuple[str, ...]]:
    q = question.strip()
    lowered = q.lower()
    for prefix, types in _PREFIXES:
        if lowered.startswith(prefix):
            focus = q[len(prefix):]
            return focus.strip().rstrip("?").strip(), types
    return q.rstrip("?").strip(), ()


def _anchor(focus: str, context: str) -> tuple[int, int] | None:
    lowered = context.lower()
    needle = focus.lower()
    if needle:
        at = lowered.find(needle)
        if at >= 0:
            return at, at + len(needle)
    starts, ends = [], []
    for word in re.findall(r"[\w$%.,-]+", needle):
        m = re.search(re.escape(word), lowered)
        if m:
            starts.append(m.start())
            ends.append(m.end())
    if not starts:
        return None
    return min(starts), max(ends)


def _description_chunks(context: str) -> list[dict]:
    """Adjective/noun runs that do not overlap a value entity."""
    tokens = tokenize(context)
    tags = pos_tag(tokens)
    entities = [(e["start"], e["end"]) for e in ner(context)]
    chunks = []
    run: list[int] = []

    def close_run():
        if not run:
            return
        start = tokens[run[0]][1]
        end = tokens[run[-1]][2]
        if not any(start < b and end > a for a, b in entities):
            chunks.append({"start": start, "end": end,
                           "text": context[start:end]})
        run.clear()

    for i, tag in enumerate(tags):
        if tag in ("NOUN", "PROPN", "ADJ"):
            run.append(i)
        else:
            close_run()
    close_run()
    return chunks


def _gap(anchor: tuple[int, int], span: tuple[int, int]) -> int:
    if span[0] >= anchor[1]:
        return span[0] - anchor[1]
    if span[1] <= anchor[0]:
        return anchor[0] - span[1]
    return 0


def _score(gap: int) -> float:
    return round(1.0 / (1.0 + gap / 10.0), 4)


_EMPTY = {"answer": "", "score": 0.0, "start": -1, "end": -1, "empty": True,
          "truncated": False}


def answer(question: str, context: str) -> dict:
    focus, hard_types = _split_question(question)
    anchor = _anchor(focus, context)
    if anchor is None:
        return dict(_EMPTY)

    entities = ner(context)
    focus_is_value = any(e["start"] <= anchor[0] and anchor[1] <= e["end"]
                         for e in entities)

    def outside_anchor(span: dict) -> bool:
        return not (anchor[0] < span["end"] and anchor[1] > span["start"])

    if focus_is_value:
        # the question names a value; answer with a description span,
        # preferring the nearest one to the left
        candidates = [c for c in _description_chunks(context) if outside_anchor(c)]
        prefer_right = False
    else:
        candidates = [e for e in entities if outside_anchor(e)]
        if hard_types:
            candidates = [e for e in candidates if e["etype"] in hard_types]
        else:
            preferred = [e for e in candidates if e["etype"] in _VALUE_PREFERENCE]
            candidates = preferred or candidates
        prefer_right = True

    if not candidates:
        return dict(_EMPTY)

    def rank(span: dict) -> tuple:
        is_right_of_anchor = span["start"] >= anchor[1]
        side_penalty = 0 if (is_right_of_anchor == prefer_right) else 1
        return (side_penalty, _gap(anchor, (span["start"], span["end"])), span["start"])

    best = min(candidates, key=rank)
    gap = _gap(anchor, (best["start"], best["end"]))
    return {"answer": best["text"], "score": _score(gap), "start": best["start"],
            "end": best["end"], "empty": False, "truncated": False}
