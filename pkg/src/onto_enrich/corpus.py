"""Question-corpus parsing and marked-phrase extraction.

The corpus is UTF-8 XML: a ``corpus`` root holding ``question`` elements,
each with one ``text`` element and any number of ``answer`` elements. Noun
phrases are marked inline with ``TERM1`` and prepositional phrases with
``TERM2``. Parsing is strict: structural violations (nested TERM tags, empty
spans, unknown elements or attributes, non-UTF-8 encodings) are rejected with
a position, never repaired.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from xml.parsers import expat

from .errors import (
    DuplicateQuestionIdError,
    MalformedXmlError,
    MissingQuestionIdError,
)


class PhraseKind(enum.Enum):
    NP = "NP"  # noun phrase, TERM1
    PP = "PP"  # prepositional phrase, TERM2


class PhraseSource(enum.Enum):
    QUESTION_TEXT = "question_text"
    ANSWER_TEXT = "answer_text"


class AnswerKind(enum.Enum):
    TEXT = "text"
    NUMERIC = "numeric"
    SYMBOLIC = "symbolic"


_TERM_TAGS = {"TERM1": PhraseKind.NP, "TERM2": PhraseKind.PP}


@dataclass(frozen=True)
class TextSpan:
    """One run of marked-up text; ``term`` is None for plain text."""

    term: PhraseKind | None
    text: str


@dataclass(frozen=True)
class MarkedText:
    spans: tuple[TextSpan, ...]

    def plain(self) -> str:
        """Content with markup stripped."""
        return "".join(s.text for s in self.spans)


@dataclass(frozen=True)
class Answer:
    kind: AnswerKind
    body: MarkedText


@dataclass(frozen=True)
class Question:
    id: str
    text: MarkedText
    answers: tuple[Answer, ...]


@dataclass(frozen=True)
class QuestionCorpus:
    questions: tuple[Question, ...]


@dataclass(frozen=True)
class MarkedPhrase:
    """A marked NP or PP span, in extraction order within its question."""

    question_id: str
    kind: PhraseKind
    raw: str
    source: PhraseSource
    ordinal: int


class _CorpusBuilder:
    """Expat handler set that builds a QuestionCorpus and validates layout."""

    def __init__(self, parser: expat.XMLParserType):
        self._p = parser
        self.questions: list[Question] = []
        self._seen_ids: set[str] = set()
        self._stack: list[str] = []
        # current question state
        self._qid: str | None = None
        self._text_spans: tuple[TextSpan, ...] | None = None
        self._answers: list[Answer] = []
        self._answer_kind: AnswerKind | None = None
        # current content-element state
        self._spans: list[TextSpan] = []
        self._buffer: list[str] = []
        self._term: PhraseKind | None = None

    def _fail(self, message: str) -> None:
        raise MalformedXmlError(
            message, self._p.CurrentLineNumber, self._p.CurrentColumnNumber + 1)

    # --- expat callbacks -------------------------------------------------

    def xml_decl(self, version: str, encoding: str | None, standalone: int) -> None:
        if encoding is not None and encoding.lower() != "utf-8":
            self._fail(f"corpus files must be UTF-8, not {encoding!r}")

    def start(self, name: str, attrs: dict[str, str]) -> None:
        parent = self._stack[-1] if self._stack else None
        if parent is None:
            if name != "corpus":
                self._fail(f"root element must be 'corpus', got '{name}'")
            if attrs:
                self._fail("'corpus' takes no attributes")
        elif parent == "corpus":
            if name != "question":
                self._fail(f"'corpus' may only contain 'question', got '{name}'")
            if set(attrs) - {"id"}:
                self._fail("'question' takes only the 'id' attribute")
            qid = attrs.get("id", "")
            if not qid:
                raise MissingQuestionIdError(
                    f"question without id at line {self._p.CurrentLineNumber}")
            if qid in self._seen_ids:
                raise DuplicateQuestionIdError(f"duplicate question id {qid!r}")
            self._seen_ids.add(qid)
            self._qid = qid
            self._text_spans = None
            self._answers = []
        elif parent == "question":
            if name == "text":
                if attrs:
                    self._fail("'text' takes no attributes")
                if self._text_spans is not None:
                    self._fail("'question' must contain exactly one 'text'")
            elif name == "answer":
                if set(attrs) - {"kind"}:
                    self._fail("'answer' takes only the 'kind' attribute")
                kind = attrs.get("kind", AnswerKind.TEXT.value)
                try:
                    self._answer_kind = AnswerKind(kind)
                except ValueError:
                    self._fail(f"unknown answer kind {kind!r}")
            else:
                self._fail(f"'question' may only contain 'text' or 'answer', got '{name}'")
            self._spans = []
            self._buffer = []
            self._term = None
        elif parent in ("text", "answer"):
            if name not in _TERM_TAGS:
                self._fail(f"only TERM1/TERM2 markup is allowed inside '{parent}'")
            if attrs:
                self._fail(f"'{name}' takes no attributes")
            self._flush_plain()
            self._term = _TERM_TAGS[name]
        else:
            # parent is TERM1/TERM2: any child element means nested markup
            self._fail(f"nested markup '{name}' inside TERM span")
        self._stack.append(name)

    def end(self, name: str) -> None:
        self._stack.pop()
        if name in _TERM_TAGS:
            raw = "".join(self._buffer)
            self._buffer = []
            if not raw.strip():
                self._fail("empty TERM span")
            self._spans.append(TextSpan(self._term, raw))
            self._term = None
        elif name == "text":
            self._flush_plain()
            spans = tuple(self._spans)
            if not "".join(s.text for s in spans).strip():
                self._fail("'text' must not be empty")
            self._text_spans = spans
        elif name == "answer":
            self._flush_plain()
            self._answers.append(Answer(self._answer_kind, MarkedText(tuple(self._spans))))
            self._answer_kind = None
        elif name == "question":
            if self._text_spans is None:
                self._fail(f"question {self._qid!r} has no 'text' element")
            self.questions.append(
                Question(self._qid, MarkedText(self._text_spans), tuple(self._answers)))
            self._qid = None

    def chardata(self, data: str) -> None:
        top = self._stack[-1] if self._stack else None
        if top in ("text", "answer") or top in _TERM_TAGS:
            self._buffer.append(data)
        elif data.strip():
            self._fail(f"stray text {data.strip()[:30]!r} outside 'text'/'answer'")

    def _flush_plain(self) -> None:
        if self._buffer:
            text = "".join(self._buffer)
            self._buffer = []
            if text:
                self._spans.append(TextSpan(None, text))


# expat would happily sniff these and parse non-UTF-8 input
_REJECTED_BOMS = (b"\x00\x00\xfe\xff", b"\xff\xfe\x00\x00", b"\xff\xfe", b"\xfe\xff")


def parse_corpus(data: bytes) -> QuestionCorpus:
    """Parse corpus XML bytes into an immutable QuestionCorpus.

    Raises MalformedXmlError (with line/column), MissingQuestionIdError or
    DuplicateQuestionIdError. Parsing is pure: the same bytes always produce
    the same corpus value.
    """
    if data.startswith(_REJECTED_BOMS):
        raise MalformedXmlError("corpus files must be UTF-8", 1, 1)
    parser = expat.ParserCreate()
    builder = _CorpusBuilder(parser)
    parser.XmlDeclHandler = builder.xml_decl
    parser.StartElementHandler = builder.start
    parser.EndElementHandler = builder.end
    parser.CharacterDataHandler = builder.chardata
    try:
        parser.Parse(data, True)
    except expat.ExpatError as exc:
        raise MalformedXmlError(
            expat.errors.messages[exc.code], exc.lineno, exc.offset + 1) from exc
    return QuestionCorpus(tuple(builder.questions))


def extract_phrases(question: Question) -> list[MarkedPhrase]:
    """Marked phrases of one question in document order.

    Question text first, then answers in order; answers whose kind is not
    ``text`` contribute nothing. Ordinals number the extracted phrases 0-based.
    """
    phrases: list[MarkedPhrase] = []

    def emit(spans: tuple[TextSpan, ...], source: PhraseSource) -> None:
        for span in spans:
            if span.term is not None:
                phrases.append(MarkedPhrase(
                    question.id, span.term, span.text, source, len(phrases)))

    emit(question.text.spans, PhraseSource.QUESTION_TEXT)
    for answer in question.answers:
        if answer.kind is AnswerKind.TEXT:
            emit(answer.body.spans, PhraseSource.ANSWER_TEXT)
    return phrases


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(text: str) -> str:
    return _escape(text).replace('"', "&quot;")


def _write_marked(spans: tuple[TextSpan, ...]) -> str:
    out = []
    for span in spans:
        if span.term is None:
            out.append(_escape(span.text))
        else:
            tag = "TERM1" if span.term is PhraseKind.NP else "TERM2"
            out.append(f"<{tag}>{_escape(span.text)}</{tag}>")
    return "".join(out)


def serialize_corpus(corpus: QuestionCorpus) -> bytes:
    """Canonical UTF-8 serialization; parse_corpus round-trips it exactly."""
    lines = ['<?xml version="1.0" encoding="utf-8"?>', "<corpus>"]
    for q in corpus.questions:
        lines.append(f'  <question id="{_escape_attr(q.id)}">')
        lines.append(f"    <text>{_write_marked(q.text.spans)}</text>")
        for a in q.answers:
            lines.append(
                f'    <answer kind="{a.kind.value}">{_write_marked(a.body.spans)}</answer>')
        lines.append("  </question>")
    lines.append("</corpus>")
    return ("\n".join(lines) + "\n").encode("utf-8")
