"""Deterministic rule-based tokenizer, tagger, dependency heuristics, and NER.

This is the built-in parsing backend: no model downloads, identical output
for identical input, character offsets correct by construction. Tagging
quality is deliberately modest; the contract is the closed tag sets and the
offset round-trip, both of which hold exactly.
"""

from __future__ import annotations

import re

TOKEN_RE = re.compile(
    r"\$\d[\d,]*(?:\.\d+)?"          # money amounts keep their $ glued on
    r"|\d[\d,]*(?:\.\d+)?(?:-\d[\d,]*(?:\.\d+)?)?"  # numbers and numeric ranges
    r"|'[sS]\b"
    r"|[A-Za-z]+"
    r"|[^\w\s]",
)

PREPOSITIONS = {
    "in", "on", "at", "by", "from", "to", "with", "of", "during", "as", "for",
    "into", "over", "under", "between", "through", "within", "against",
    "toward", "towards", "per", "via", "upon", "since", "until",
}
PRONOUNS = {"we", "it", "they", "he", "she", "i", "you", "us", "them", "its",
            "our", "their", "who", "which"}
DETERMINERS = {"the", "a", "an", "this", "that", "these", "those", "each",
               "every", "any", "some", "no", "certain"}
FUNCTION_WORDS = {"and", "or", "but", "if", "then", "than", "respectively",
                  "not", "also", "when", "while", "where", "whose", "there",
                  "so", "such", "both", "either", "neither", "however"}
AUXILIARIES = {"is", "are", "was", "were", "be", "been", "being", "will",
               "would", "shall", "should", "may", "might", "can", "could",
               "must", "has", "have", "had", "does", "do", "did"}
VERBS = {"increase", "increased", "reduce", "reduced", "pay", "paid", "charge",
         "charged", "relate", "related", "grant", "granted", "amounted",
         "report", "reported", "receive", "received", "elect", "elected",
         "file", "filed", "record", "recorded", "expect", "expected",
         "decline", "declined", "rose", "fell", "grew"}
ADJECTIVES = {"available", "average", "remaining", "weighted", "revolving",
              "annual", "total", "net", "gross", "fair", "deferred",
              "estimated", "outstanding", "current", "future", "minimum",
              "maximum", "aggregate", "applicable", "variable", "restricted",
              "new", "certain", "approximate", "quarterly"}
MONTHS = {"january", "february", "march", "april", "may", "june", "july",
          "august", "september", "october", "november", "december"}
TIME_UNITS = {"year", "years", "month", "months", "week", "weeks", "day",
              "days", "quarter", "quarters"}


def tokenize(text: str) -> list[tuple[str, int, int]]:
    """(surface, start, end) triples; spans always reproduce the text."""
    return [(m.group(0), m.start(), m.end()) for m in TOKEN_RE.finditer(text)]


def _initial_tag(surface: str, position: int) -> str:
    lower = surface.lower()
    if surface[0].isdigit() or surface.startswith("$"):
        return "NUM"
    if lower in MONTHS:
        return "PROPN"
    if lower in PREPOSITIONS:
        return "ADP"
    if lower in PRONOUNS:
        return "PRON"
    if lower in DETERMINERS or lower in FUNCTION_WORDS:
        return "OTHER"
    if lower in AUXILIARIES:
        return "VERB"
    if lower in VERBS:
        return "VERB"
    if lower in ADJECTIVES:
        return "ADJ"
    if not surface[0].isalpha():
        return "OTHER"
    if lower.endswith("ly"):
        return "OTHER"
    if lower.endswith(("ing", "ed")):
        return "VERB"
    if surface[0].isupper() and position > 0:
        return "PROPN"
    return "NOUN"


def pos_tag(tokens: list[tuple[str, int, int]]) -> list[str]:
    tags = [_initial_tag(surface, i) for i, (surface, _, _) in enumerate(tokens)]
    # participles wedged between a determiner/adjective/noun and a noun act
    # as modifiers, e.g. "the borrowing capacity"
    for i, tag in enumerate(tags):
        if tag != "VERB" or not tokens[i][0].lower().endswith(("ing", "ed")):
            continue
        prev_tag = tags[i - 1] if i > 0 else None
        next_tag = tags[i + 1] if i + 1 < len(tags) else None
        if next_tag in ("NOUN", "PROPN") and prev_tag in ("OTHER", "ADJ", "NOUN", "PROPN"):
            tags[i] = "ADJ"
    return tags


_NOMINAL = ("NOUN", "PROPN", "PRON")


def _chunkable(surface: str, tag: str) -> bool:
    # determiners extend a chunk; conjunctions and the rest of OTHER break it
    if not surface[0].isalnum():
        return False
    if tag in ("NOUN", "PROPN", "ADJ"):
        return True
    return tag == "OTHER" and surface.lower() in DETERMINERS


def _noun_chunks(tags: list[str], tokens: list[tuple[str, int, int]]) -> list[tuple[int, int]]:
    """(first, head) index pairs for maximal det/adj/noun runs ending in a noun."""
    chunks = []
    i = 0
    n = len(tags)
    while i < n:
        if _chunkable(tokens[i][0], tags[i]):
            j = i
            last_noun = -1
            while j < n and _chunkable(tokens[j][0], tags[j]):
                if tags[j] in _NOMINAL:
                    last_noun = j
                j += 1
            if last_noun >= 0:
                chunks.append((i, last_noun))
            i = j
        else:
            i += 1
    return chunks


def depparse(tokens: list[tuple[str, int, int]], tags: list[str]) -> list[tuple[int, str]]:
    """Heuristic (head, deprel) per token, normalized label set.

    Noun chunks hang off their head noun (compounds and modifiers), chunk
    heads attach to a preceding preposition as PREP_OBJ or to the nearest
    verb as SUBJ/OBJ, prepositions attach to the noun they follow, and
    everything else falls back to the root verb.
    """
    n = len(tokens)
    root = next((i for i, t in enumerate(tags) if t == "VERB"), 0)
    heads = [root] * n
    rels = ["OTHER"] * n
    heads[root] = root

    chunk_head = {}
    for first, head in _noun_chunks(tags, tokens):
        for i in range(first, head):
            heads[i] = head
            rels[i] = "COMPOUND" if tags[i] in _NOMINAL else "OTHER"
        chunk_head[head] = first

    seen_subject = False
    last_verb = root
    for i in range(n):
        tag = tags[i]
        if i in chunk_head:
            first = chunk_head[i]
            prev = first - 1
            if prev >= 0 and tags[prev] == "ADP":
                heads[i] = prev
                rels[i] = "PREP_OBJ"
            elif i < root and not seen_subject:
                heads[i] = root
                rels[i] = "SUBJ"
                seen_subject = True
            else:
                heads[i] = last_verb
                rels[i] = "OBJ"
        elif tag == "ADP":
            # a preposition modifies the noun it follows only when a nominal
            # actually follows it; "by $33,000" stays on the verb
            follower = i + 1
            while follower < n and tags[follower] in ("OTHER", "ADJ"):
                follower += 1
            nominal_ahead = follower < n and tags[follower] in _NOMINAL
            prev = i - 1
            if nominal_ahead and prev >= 0 and tags[prev] in _NOMINAL:
                heads[i] = prev
            else:
                heads[i] = last_verb
            rels[i] = "OTHER"
        elif tag == "NUM":
            nxt = i + 1
            prev = i - 1
            if nxt < n and tags[nxt] in _NOMINAL:
                heads[i] = nxt
            elif prev >= 0 and tags[prev] == "ADP":
                heads[i] = prev
                rels[i] = "PREP_OBJ"
            elif prev >= 0:
                heads[i] = prev
            else:
                heads[i] = root
        elif tag == "VERB":
            if i != root:
                heads[i] = root
            last_verb = i
        elif i != root and heads[i] == root:
            heads[i] = last_verb if i > last_verb else root

    # exactly one self-headed token allowed: repoint accidental self-loops
    for i in range(n):
        if i != root and heads[i] == i:
            heads[i] = root
    return list(zip(heads, rels))


# ---------------------------------------------------------------------------
# named entities

_MONEY = (r"\$\d[\d,]*(?:\.\d+)?(?:\s+(?:million|billion|thousand|hundred))?"
          r"(?:\s+to\s+\$\d[\d,]*(?:\.\d+)?(?:\s+(?:million|billion|thousand))?)?")
_PERCENT = (r"\d[\d,]*(?:\.\d+)?\s?%"
            r"(?:\s+(?:and|or|to)\s+\d[\d,]*(?:\.\d+)?\s?%)?")
_MONTH = (r"(?:January|February|March|April|May|June|July|August|September|"
          r"October|November|December)")
_DATE = (rf"{_MONTH}\s+\d{{1,2}},\s+\d{{4}}"
         rf"|{_MONTH}\s+\d{{4}}"
         rf"|\d+(?:\.\d+)?\s+(?:years?|months?|weeks?|days?)\b"
         r"|\b(?:19|20)\d\d\b")
_RANGE = r"\d+-\d+(?:\s+or\s+\d+-\d+)?"
_ORDINAL = r"\b\d+(?:st|nd|rd|th)\b|\b(?:first|second|third|fourth|fifth)\b"
_CARDINAL = r"\b\d[\d,]*(?:\.\d+)?\b"

_ENTITY_PATTERNS: list[tuple[str, re.Pattern]] = [
    ("MONEY", re.compile(_MONEY)),
    ("PERCENT", re.compile(_PERCENT)),
    ("DATE", re.compile(_DATE)),
    ("RANGE", re.compile(_RANGE)),
    ("ORDINAL", re.compile(_ORDINAL, re.IGNORECASE)),
    ("CARDINAL", re.compile(_CARDINAL)),
]


def ner(text: str) -> list[dict]:
    """Value-typed entity spans, leftmost-longest, higher-priority type wins."""
    taken: list[tuple[int, int]] = []
    found: list[dict] = []

    def overlaps(start: int, end: int) -> bool:
        return any(start < b and end > a for a, b in taken)

    for etype, pattern in _ENTITY_PATTERNS:
        for m in pattern.finditer(text):
            start, end = m.start(), m.end()
            if overlaps(start, end):
                continue
            label = etype
            if etype == "RANGE":
                # a bare numeric range reads as a date span only after a
                # month/period word, e.g. "months 13-24 or 25-36"
                before = text[:start].rstrip().lower()
                label = "DATE" if before.endswith(("month", "months", "period",
                                                   "periods")) else "CARDINAL"
            taken.append((start, end))
            found.append({"start": start, "end": end, "text": text[start:end],
                          "etype": label})
    found.sort(key=lambda e: e["start"])
    return found


def parse(text: str) -> dict:
    """Full /parse payload: tokens with heads and normalized labels, entities."""
    tokens = tokenize(text)
    tags = pos_tag(tokens)
    arcs = depparse(tokens, tags)
    return {
        "tokens": [
            {"i": i, "text": surface, "pos": tags[i], "head": arcs[i][0],
             "deprel": arcs[i][1], "start": start, "end": end}
            for i, (surface, start, end) in enumerate(tokens)
        ],
        "entities": ner(text),
    }
