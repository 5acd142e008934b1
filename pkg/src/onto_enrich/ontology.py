"""Concept-graph loading and label indexing.

The ontology ships as a minimal line-based triple file: one triple per line,
``<iri> <iri> <iri> .`` for relations or ``<iri> <iri> "literal"@lang .`` for
labels. IRIs are opaque strings; no prefix expansion, blank nodes or nesting.
Edges whose predicate is in the configured hierarchical set (default
rdfs:subClassOf and ome:hasChild) form the hierarchy; every edge belongs to
the full relation graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import MalformedTripleError, SelfLoopEdgeError, UnterminatedLiteralError
from .textnorm import LemmaSequence, Lexicon, Stoplist, normalize_phrase

DEFAULT_HIERARCHICAL_PREDICATES = frozenset({"rdfs:subClassOf", "ome:hasChild"})
DEFAULT_LABEL_PREDICATES = frozenset({"rdfs:label"})


@dataclass(frozen=True)
class Literal:
    """A quoted object value with an optional language tag."""

    text: str
    lang: str | None = None


@dataclass(frozen=True)
class Label:
    text: str
    lang: str | None = None


@dataclass(frozen=True)
class Concept:
    iri: str
    labels: tuple[Label, ...]


@dataclass(frozen=True)
class RelationEdge:
    subject: str
    predicate: str
    object: str


Triple = tuple[str, str, "str | Literal"]

_ESCAPES = {"\\": "\\", '"': '"', "n": "\n", "t": "\t", "r": "\r"}


def _scan_iri(line: str, pos: int, lineno: int) -> tuple[str, int]:
    if pos >= len(line) or line[pos] != "<":
        raise MalformedTripleError(f"expected '<' at column {pos + 1}", lineno)
    end = line.find(">", pos + 1)
    if end < 0:
        raise MalformedTripleError("IRI missing closing '>'", lineno)
    iri = line[pos + 1:end]
    if not iri or any(c.isspace() for c in iri) or "<" in iri:
        raise MalformedTripleError(f"invalid IRI <{iri}>", lineno)
    return iri, end + 1


def _scan_literal(line: str, pos: int, lineno: int) -> tuple[Literal, int]:
    chars: list[str] = []
    i = pos + 1
    while i < len(line):
        c = line[i]
        if c == "\\":
            if i + 1 >= len(line) or line[i + 1] not in _ESCAPES:
                raise MalformedTripleError(f"bad escape at column {i + 1}", lineno)
            chars.append(_ESCAPES[line[i + 1]])
            i += 2
        elif c == '"':
            i += 1
            lang = None
            if i < len(line) and line[i] == "@":
                j = i + 1
                while j < len(line) and (line[j].isalnum() or line[j] == "-"):
                    j += 1
                lang = line[i + 1:j]
                if not lang:
                    raise MalformedTripleError("empty language tag", lineno)
                i = j
            return Literal("".join(chars), lang), i
        else:
            chars.append(c)
            i += 1
    raise UnterminatedLiteralError("literal never closes its quote", lineno)


def _skip_ws(line: str, pos: int) -> int:
    while pos < len(line) and line[pos] in " \t":
        pos += 1
    return pos


def parse_triples(data: bytes) -> list[Triple]:
    """Parse ontology bytes into (subject, predicate, object) triples.

    Objects are IRI strings or Literal values (language tag retained). Blank
    lines and ``#`` comment lines are skipped. Raises MalformedTripleError or
    UnterminatedLiteralError with the 1-based line number.
    """
    triples: list[Triple] = []
    for lineno, line in enumerate(data.decode("utf-8").splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        pos = _skip_ws(line, 0)
        subject, pos = _scan_iri(line, pos, lineno)
        pos = _skip_ws(line, pos)
        predicate, pos = _scan_iri(line, pos, lineno)
        pos = _skip_ws(line, pos)
        obj: str | Literal
        if pos < len(line) and line[pos] == '"':
            obj, pos = _scan_literal(line, pos, lineno)
        else:
            obj, pos = _scan_iri(line, pos, lineno)
        pos = _skip_ws(line, pos)
        if pos >= len(line) or line[pos] != ".":
            raise MalformedTripleError("triple missing terminating '.'", lineno)
        if line[pos + 1:].strip():
            raise MalformedTripleError("trailing content after '.'", lineno)
        triples.append((subject, predicate, obj))
    return triples


def local_name(iri: str) -> str:
    """Fallback label: the IRI fragment after the last '#', '/' or ':'."""
    cut = max(iri.rfind("#"), iri.rfind("/"), iri.rfind(":"))
    if 0 <= cut < len(iri) - 1:
        return iri[cut + 1:]
    return iri


@dataclass(frozen=True)
class OntologyGraph:
    """Immutable typed concept graph with a hierarchical predicate subset."""

    concepts: dict[str, Concept]
    edges: tuple[RelationEdge, ...]
    hierarchical_predicates: frozenset[str]
    # adjacency caches, derived from edges; excluded from equality
    _adj_full: dict[str, tuple[tuple[str, str], ...]] = field(
        compare=False, repr=False, default_factory=dict)
    _adj_hier: dict[str, tuple[tuple[str, str], ...]] = field(
        compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        full: dict[str, set[tuple[str, str]]] = {iri: set() for iri in self.concepts}
        hier: dict[str, set[tuple[str, str]]] = {iri: set() for iri in self.concepts}
        for e in self.edges:
            full[e.subject].add((e.object, e.predicate))
            full[e.object].add((e.subject, e.predicate))
            if e.predicate in self.hierarchical_predicates:
                hier[e.subject].add((e.object, e.predicate))
                hier[e.object].add((e.subject, e.predicate))
        self._adj_full.update({k: tuple(sorted(v)) for k, v in full.items()})
        self._adj_hier.update({k: tuple(sorted(v)) for k, v in hier.items()})

    def neighbors(self, iri: str, hierarchical_only: bool) -> tuple[tuple[str, str], ...]:
        """(neighbor iri, predicate iri) pairs in ascending order, undirected."""
        adj = self._adj_hier if hierarchical_only else self._adj_full
        return adj[iri]

    def hierarchical_edges(self) -> tuple[RelationEdge, ...]:
        return tuple(e for e in self.edges if e.predicate in self.hierarchical_predicates)


def build_graph(
    triples: Iterable[Triple],
    hierarchical_predicates: Iterable[str] = DEFAULT_HIERARCHICAL_PREDICATES,
    label_predicates: Iterable[str] = DEFAULT_LABEL_PREDICATES,
    label_lang: str | None = None,
) -> OntologyGraph:
    """Assemble the concept graph from parsed triples.

    Concepts are all IRIs on either end of a relation triple plus subjects of
    literal triples. Labels come from label-predicate literals; a concept
    left without labels (none given, or all filtered out by ``label_lang``)
    falls back to its IRI local name. Duplicate edges collapse; self-loops
    raise SelfLoopEdgeError.
    """
    label_preds = frozenset(label_predicates)
    iris: set[str] = set()
    labels: dict[str, list[Label]] = {}
    edge_set: set[tuple[str, str, str]] = set()
    for subject, predicate, obj in triples:
        iris.add(subject)
        if isinstance(obj, Literal):
            if predicate in label_preds and obj.text:
                lab = Label(obj.text, obj.lang)
                bucket = labels.setdefault(subject, [])
                if lab not in bucket:
                    bucket.append(lab)
        else:
            if subject == obj:
                raise SelfLoopEdgeError(f"self-loop on <{subject}> via <{predicate}>")
            iris.add(obj)
            edge_set.add((subject, predicate, obj))

    concepts: dict[str, Concept] = {}
    for iri in sorted(iris):
        found = labels.get(iri, [])
        if label_lang is not None:
            found = [l for l in found if l.lang == label_lang]
        if not found:
            found = [Label(local_name(iri), None)]
        concepts[iri] = Concept(iri, tuple(found))

    edges = tuple(RelationEdge(*e) for e in sorted(edge_set))
    return OntologyGraph(concepts, edges, frozenset(hierarchical_predicates))


@dataclass(frozen=True)
class IndexEntry:
    """One (concept, label) pair with the label's normalized lemma sequence."""

    iri: str
    label: str
    lemmas: LemmaSequence


@dataclass(frozen=True)
class LabelIndex:
    entries: tuple[IndexEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)


def build_label_index(
    graph: OntologyGraph,
    lexicon: Lexicon,
    stoplist: Stoplist,
    on_warning: Callable[[str], None] | None = None,
) -> LabelIndex:
    """Normalize every concept label into a matchable entry.

    Entries are sorted by (iri, label). Labels that normalize to an empty
    lemma sequence are dropped; each drop is reported through ``on_warning``.
    """
    entries: list[IndexEntry] = []
    for iri in sorted(graph.concepts):
        texts = sorted({label.text for label in graph.concepts[iri].labels})
        for text in texts:
            lemmas = normalize_phrase(text, lexicon, stoplist)
            if lemmas:
                entries.append(IndexEntry(iri, text, lemmas))
            elif on_warning is not None:
                on_warning(f"label {text!r} of <{iri}> normalizes to empty; not indexed")
    return LabelIndex(tuple(entries))
