from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from kvextract.corpus import Document
from kvextract.phrases import all_phrases
from kvextract.questions import forward_questions, reverse_question
from kvextract.reader import (
    FixtureReader,
    NearestEntityReader,
    ReaderError,
    ReaderKind,
    ReaderSpec,
    RemoteReader,
    build_reader,
)

from .builders import make_sentence


def _one_forward_question(sentence):
    questions = forward_questions(sentence, all_phrases(sentence))
    assert questions
    return questions[0]


# ---------------------------------------------------------------------------
# fixture reader


def test_fixture_reader_returns_pinned_answers(walkthrough_doc, fixture_reader):
    s1 = walkthrough_doc.sentences[0]
    questions = {q.text: q for q in forward_questions(s1, all_phrases(s1))}

    a = fixture_reader.answer(
        questions["How much is borrowing capacity on revolving credit loan ?"], s1.text)
    assert (a.text, a.confidence) == ("$33,000", 0.946)
    assert s1.text[a.char_start:a.char_end] == "$33,000"

    a = fixture_reader.answer(
        questions["How much is available credit facility ?"], s1.text)
    assert (a.text, a.confidence) == ("$60,000 to $93,000", 0.5762)


def test_fixture_reader_abstains_on_miss(walkthrough_doc, fixture_reader):
    s3 = walkthrough_doc.sentences[2]
    q = _one_forward_question(s3)
    a = fixture_reader.answer(q, s3.text)
    assert a.empty and a.text == "" and a.confidence == 0.0


def test_fixture_reader_unreadable_file(tmp_path):
    with pytest.raises(ReaderError):
        FixtureReader(path=tmp_path / "missing.jsonl")


def test_fixture_reader_bad_json(tmp_path):
    path = tmp_path / "rows.jsonl"
    path.write_text("{not json\n", encoding="utf-8")
    with pytest.raises(ReaderError):
        FixtureReader(path=path)


def test_fixture_reader_repairs_bad_offsets():
    context = "total cost was $5 today"
    reader = FixtureReader(rows=[{
        "question": "How much is total cost ?", "context": context,
        "answer": "$5", "score": 0.9, "start": 0, "end": 2,  # wrong span
    }])
    q = _one_forward_question(make_sentence(
        [("total", "NOUN", 1, "COMPOUND"), ("cost", "NOUN", 2, "SUBJ"),
         ("was", "VERB", 2, "OTHER"), ("$5", "NUM", 2, "OTHER"),
         ("today", "OTHER", 2, "OTHER")],
        entities=[("$5", "MONEY")]))
    a = reader.answer(q, context)
    assert context[a.char_start:a.char_end] == "$5"


# ---------------------------------------------------------------------------
# nearest-entity reader


def _two_entity_sentence():
    # phrase "loan fee" sits next to $1; $9 is far away on the right
    return make_sentence(
        [("loan", "NOUN", 1, "COMPOUND"), ("fee", "NOUN", 2, "SUBJ"),
         ("was", "VERB", 2, "OTHER"), ("$1", "NUM", 2, "OTHER"),
         ("but", "OTHER", 2, "OTHER"), ("later", "OTHER", 2, "OTHER"),
         ("rose", "VERB", 2, "OTHER"), ("toward", "OTHER", 6, "OTHER"),
         ("$9", "NUM", 6, "OTHER")],
        entities=[("$1", "MONEY"), ("$9", "MONEY")])


def test_nearest_entity_forward_picks_closest():
    s = _two_entity_sentence()
    reader = NearestEntityReader([Document(document_id="d", sentences=(s,))])
    q = _one_forward_question(s)
    a = reader.answer(q, s.text)
    assert a.text == "$1"
    assert s.text[a.char_start:a.char_end] == "$1"


def test_nearest_entity_confidence_decreases_with_distance():
    s = _two_entity_sentence()
    reader = NearestEntityReader([Document(document_id="d", sentences=(s,))])
    q = _one_forward_question(s)
    near = reader.answer(q, s.text).confidence
    from dataclasses import replace
    far_only = replace(s, entities=(s.entities[1],))
    far = NearestEntityReader(
        [Document(document_id="d", sentences=(far_only,))]).answer(q, far_only.text).confidence
    assert near > far > 0.0


def test_nearest_entity_reverse_returns_phrase():
    s = _two_entity_sentence()
    reader = NearestEntityReader([Document(document_id="d", sentences=(s,))])
    a = reader.answer(reverse_question(s.entities[0]), s.text)
    assert a.text == "loan fee"
    assert s.text[a.char_start:a.char_end] == "loan fee"


def test_nearest_entity_unknown_context_abstains():
    s = _two_entity_sentence()
    reader = NearestEntityReader([Document(document_id="d", sentences=(s,))])
    assert reader.answer(_one_forward_question(s), "different context").empty


def test_nearest_entity_is_referentially_transparent():
    s = _two_entity_sentence()
    reader = NearestEntityReader([Document(document_id="d", sentences=(s,))])
    q = _one_forward_question(s)
    assert reader.answer(q, s.text) == reader.answer(q, s.text)


# ---------------------------------------------------------------------------
# remote reader


class _ScriptedHandler(BaseHTTPRequestHandler):
    script: list = []
    requests_seen: list = []

    def do_GET(self):  # /health probe
        self.send_response(200)
        self.end_headers()
        self.wfile.write(b'{"status":"ok"}')

    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        body = json.loads(self.rfile.read(length) or b"{}")
        type(self).requests_seen.append((self.path, body))
        if not type(self).script:
            status, payload = 200, {"answer": "", "score": 0.0, "start": -1,
                                    "end": -1, "empty": True}
        else:
            status, payload = type(self).script.pop(0)
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.end_headers()
        self.wfile.write(json.dumps(payload).encode("utf-8"))

    def log_message(self, *args):
        pass


@pytest.fixture()
def stub_server():
    handler = type("Handler", (_ScriptedHandler,), {"script": [], "requests_seen": []})
    server = ThreadingHTTPServer(("127.0.0.1", 0), handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield f"http://127.0.0.1:{server.server_port}", handler
    finally:
        server.shutdown()
        thread.join()


def _remote(endpoint: str, retries: int = 2) -> RemoteReader:
    return RemoteReader(ReaderSpec(kind=ReaderKind.REMOTE, endpoint=endpoint,
                                   retries=retries, timeout=5.0, backoff_s=0.01))


def test_remote_reader_round_trip(stub_server, walkthrough_doc):
    endpoint, handler = stub_server
    s1 = walkthrough_doc.sentences[0]
    start = s1.text.find("$33,000")
    handler.script.append((200, {"answer": "$33,000", "score": 0.9,
                                 "start": start, "end": start + 7, "empty": False}))
    reader = _remote(endpoint)
    reader.preflight()
    a = reader.answer(_one_forward_question(s1), s1.text)
    assert (a.text, a.confidence, a.empty) == ("$33,000", 0.9, False)
    assert handler.requests_seen[0][0] == "/answer"
    assert handler.requests_seen[0][1]["context"] == s1.text


def test_remote_reader_reconciles_offsets(stub_server, walkthrough_doc):
    endpoint, handler = stub_server
    s1 = walkthrough_doc.sentences[0]
    handler.script.append((200, {"answer": "$33,000", "score": 0.5,
                                 "start": 3, "end": 10, "empty": False}))
    a = _remote(endpoint).answer(_one_forward_question(s1), s1.text)
    assert s1.text[a.char_start:a.char_end] == "$33,000"


def test_remote_reader_abstention(stub_server, walkthrough_doc):
    endpoint, handler = stub_server
    s1 = walkthrough_doc.sentences[0]
    handler.script.append((200, {"answer": "", "score": 0.0, "start": -1,
                                 "end": -1, "empty": True}))
    assert _remote(endpoint).answer(_one_forward_question(s1), s1.text).empty


def test_remote_reader_retries_then_succeeds(stub_server, walkthrough_doc):
    endpoint, handler = stub_server
    s1 = walkthrough_doc.sentences[0]
    handler.script.append((503, {"error": "loading"}))
    handler.script.append((200, {"answer": "$33,000", "score": 0.4,
                                 "start": -1, "end": -1, "empty": False}))
    a = _remote(endpoint).answer(_one_forward_question(s1), s1.text)
    assert a.text == "$33,000"
    assert len(handler.requests_seen) == 2


def test_remote_reader_fails_after_retries(stub_server, walkthrough_doc):
    endpoint, handler = stub_server
    s1 = walkthrough_doc.sentences[0]
    handler.script.extend([(500, {}), (500, {}), (500, {})])
    with pytest.raises(ReaderError):
        _remote(endpoint, retries=2).answer(_one_forward_question(s1), s1.text)


def test_remote_reader_rejects_out_of_range_score(stub_server, walkthrough_doc):
    endpoint, handler = stub_server
    s1 = walkthrough_doc.sentences[0]
    handler.script.extend([(200, {"answer": "x", "score": 3.2, "start": -1,
                                  "end": -1, "empty": False})] * 3)
    with pytest.raises(ReaderError):
        _remote(endpoint).answer(_one_forward_question(s1), s1.text)


def test_remote_reader_unreachable_preflight():
    reader = _remote("http://127.0.0.1:9")  # discard port, nothing listens
    with pytest.raises(ReaderError):
        reader.preflight()


# ---------------------------------------------------------------------------
# spec validation / factory


def test_reader_spec_validation():
    with pytest.raises(ValueError):
        ReaderSpec(kind=ReaderKind.REMOTE).validate()
    with pytest.raises(ValueError):
        ReaderSpec(kind=ReaderKind.FIXTURE).validate()
    ReaderSpec(kind=ReaderKind.NEAREST_ENTITY).validate()


def test_build_reader_dispatch(data_dir, walkthrough_doc):
    assert isinstance(build_reader(
        ReaderSpec(kind=ReaderKind.FIXTURE, fixture_path=data_dir / "reader_fixture.jsonl")),
        FixtureReader)
    assert isinstance(build_reader(
        ReaderSpec(kind=ReaderKind.NEAREST_ENTITY), [walkthrough_doc]), NearestEntityReader)
    assert isinstance(build_reader(
        ReaderSpec(kind=ReaderKind.REMOTE, endpoint="http://127.0.0.1:9")), RemoteReader)
