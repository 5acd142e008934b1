"""End-to-end run: corpus + ontology in, expert-review report out.

Stage order: parse corpus, load lexicon/stoplist, build graph and label
index, match every question, enumerate co-occurring concept pairs, compare
hierarchical against full shortest paths once per unique pair, aggregate
question ids, and emit a deterministically ordered report. Matching and
pair comparison are pure per-item and may fan out over threads; results are
re-ordered afterwards so parallel runs serialize byte-identically.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, replace
from pathlib import Path

from . import __version__
from .corpus import extract_phrases, parse_corpus
from .errors import InternalInvariantError, OntoEnrichError
from .matcher import CompiledLabelIndex, ConceptMatch, MatchConfig, match_question
from .ontology import (
    DEFAULT_HIERARCHICAL_PREDICATES,
    DEFAULT_LABEL_PREDICATES,
    OntologyGraph,
    build_graph,
    build_label_index,
    parse_triples,
)
from .pathfinder import (
    DEFAULT_MAX_DEPTH,
    ConnectionRecord,
    PathResult,
    compare,
    enumerate_pairs,
)
from .textnorm import DEFAULT_STOPLIST, Lexicon, load_lexicon, load_stoplist

OUTPUT_FORMATS = ("json", "csv")


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs; echoed into the report for provenance."""

    ontology: str
    corpus: str
    lexicon: str | None = None
    stoplist: str | None = None
    match: MatchConfig = MatchConfig()
    max_depth: int = DEFAULT_MAX_DEPTH
    label_predicates: tuple[str, ...] = tuple(sorted(DEFAULT_LABEL_PREDICATES))
    hierarchical_predicates: tuple[str, ...] = tuple(sorted(DEFAULT_HIERARCHICAL_PREDICATES))
    label_lang: str | None = None
    format: str = "json"
    optimal_only: bool = False
    out: str | None = None

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.format not in OUTPUT_FORMATS:
            raise ValueError(f"format must be one of {OUTPUT_FORMATS}, got {self.format!r}")


@dataclass(frozen=True)
class Report:
    version: str
    config: RunConfig
    records: tuple[ConnectionRecord, ...]
    matches: tuple[ConceptMatch, ...]
    warnings: tuple[str, ...]


def _record_sort_key(record: ConnectionRecord):
    full_len = record.full.length if record.full is not None else float("inf")
    return (not record.optimal, full_len, record.concept_a, record.concept_b)


@contextmanager
def _file_context(path: str):
    # parse errors already carry line numbers; prepend the offending file
    try:
        yield
    except OntoEnrichError as exc:
        exc.args = (f"{path}: {exc}",)
        raise


def run(config: RunConfig, jobs: int = 1) -> Report:
    """Execute the whole pipeline; ``jobs`` > 1 fans matching and path
    comparison out over threads without changing the result."""
    with _file_context(config.corpus):
        corpus = parse_corpus(Path(config.corpus).read_bytes())
    lexicon = Lexicon()
    if config.lexicon:
        with _file_context(config.lexicon):
            lexicon = load_lexicon(Path(config.lexicon).read_bytes())
    stoplist = DEFAULT_STOPLIST
    if config.stoplist:
        with _file_context(config.stoplist):
            stoplist = load_stoplist(Path(config.stoplist).read_bytes())
    with _file_context(config.ontology):
        graph = build_graph(
            parse_triples(Path(config.ontology).read_bytes()),
            hierarchical_predicates=config.hierarchical_predicates,
            label_predicates=config.label_predicates,
            label_lang=config.label_lang,
        )
    warnings: list[str] = []
    index = build_label_index(graph, lexicon, stoplist, on_warning=warnings.append)
    compiled = CompiledLabelIndex.compile(index)

    matches = _match_all(corpus, compiled, lexicon, stoplist, config.match, jobs)

    pair_questions: dict[tuple[str, str], set[str]] = {}
    for per_question in matches:
        for a, b, qid in enumerate_pairs(per_question):
            pair_questions.setdefault((a, b), set()).add(qid)

    records = _compare_all(graph, pair_questions, config.max_depth, jobs)
    records.sort(key=_record_sort_key)
    if config.optimal_only:
        records = [r for r in records if r.optimal]

    match_log = sorted(
        (m for per_question in matches for m in per_question),
        key=lambda m: (m.question_id, m.phrase.ordinal),
    )
    report = Report(
        version=__version__,
        config=config,
        records=tuple(records),
        matches=tuple(match_log),
        warnings=tuple(warnings),
    )
    _check_report(report, graph)
    return report


def _match_all(corpus, compiled, lexicon, stoplist, match_config, jobs):
    def one(question):
        return match_question(
            question, extract_phrases(question), compiled, lexicon, stoplist, match_config)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, corpus.questions))
    return [one(q) for q in corpus.questions]


def _compare_all(graph, pair_questions, max_depth, jobs):
    pairs = sorted(pair_questions)

    def one(pair):
        record = compare(graph, pair, max_depth)
        return replace(record, question_ids=tuple(sorted(pair_questions[pair])))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, pairs))
    return [one(p) for p in pairs]


def _check_path(record, path, edges):
    if len(path.nodes) != path.length + 1 or len(path.predicates) != path.length:
        raise InternalInvariantError(f"inconsistent path arity in {record}")
    for i, predicate in enumerate(path.predicates):
        a, b = path.nodes[i], path.nodes[i + 1]
        if (a, predicate, b) not in edges and (b, predicate, a) not in edges:
            raise InternalInvariantError(f"path step {a}-{b} not in graph for {record}")


def _check_report(report: Report, graph: OntologyGraph) -> None:
    """Cross-check every record against its invariants before emitting."""
    edges = {(e.subject, e.predicate, e.object) for e in graph.edges}
    seen = set()
    for record in report.records:
        if record.concept_a >= record.concept_b:
            raise InternalInvariantError(f"unordered pair in {record}")
        if (record.concept_a, record.concept_b) in seen:
            raise InternalInvariantError(f"duplicate pair in {record}")
        seen.add((record.concept_a, record.concept_b))
        if not record.question_ids or list(record.question_ids) != sorted(record.question_ids):
            raise InternalInvariantError(f"bad question ids in {record}")
        both = record.hierarchical is not None and record.full is not None
        if both and record.full.length > record.hierarchical.length:
            raise InternalInvariantError(f"full path longer than hierarchical in {record}")
        if record.optimal != (both and record.full.length < record.hierarchical.length):
            raise InternalInvariantError(f"optimal flag inconsistent in {record}")
        for path in (record.hierarchical, record.full):
            if path is not None:
                _check_path(record, path, edges)


def _path_dict(path: PathResult | None):
    if path is None:
        return None
    return {
        "length": path.length,
        "nodes": list(path.nodes),
        "predicates": list(path.predicates),
    }


def _report_dict(report: Report) -> dict:
    config = report.config
    return {
        "tool": "onto-enrich",
        "version": report.version,
        "config": {
            "ontology": config.ontology,
            "corpus": config.corpus,
            "lexicon": config.lexicon,
            "stoplist": config.stoplist,
            "word_threshold": config.match.word_threshold,
            "seq_threshold": config.match.seq_threshold,
            "max_depth": config.max_depth,
            "label_predicates": list(config.label_predicates),
            "hierarchical_predicates": list(config.hierarchical_predicates),
            "label_lang": config.label_lang,
            "format": config.format,
            "optimal_only": config.optimal_only,
        },
        "records": [
            {
                "concept_a": r.concept_a,
                "concept_b": r.concept_b,
                "optimal": r.optimal,
                "hierarchical": _path_dict(r.hierarchical),
                "full": _path_dict(r.full),
                "question_ids": list(r.question_ids),
            }
            for r in report.records
        ],
        "matches": [
            {
                "question_id": m.question_id,
                "ordinal": m.phrase.ordinal,
                "kind": m.phrase.kind.value,
                "source": m.phrase.source.value,
                "phrase": m.phrase.raw,
                "concept": m.concept_iri,
                "label": m.matched_label,
                "score": m.score,
            }
            for m in report.matches
        ],
        "warnings": list(report.warnings),
    }


def serialize_report(report: Report, format: str) -> bytes:
    """Serialize to UTF-8 bytes; identical reports serialize identically.

    JSON: fixed key order as produced by _report_dict, two-space indent,
    newline-terminated. CSV: one row per record with the header
    concept_a,concept_b,hier_len,full_len,optimal,questions,hier_path,full_path;
    paths are '/'-joined node iris, questions ';'-joined, and both length and
    path cells stay empty when a path does not exist.
    """
    if format == "json":
        return (json.dumps(_report_dict(report), ensure_ascii=False, indent=2) + "\n").encode("utf-8")
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([
            "concept_a", "concept_b", "hier_len", "full_len",
            "optimal", "questions", "hier_path", "full_path",
        ])
        for r in report.records:
            writer.writerow([
                r.concept_a,
                r.concept_b,
                r.hierarchical.length if r.hierarchical else "",
                r.full.length if r.full else "",
                "true" if r.optimal else "false",
                ";".join(r.question_ids),
                "/".join(r.hierarchical.nodes) if r.hierarchical else "",
                "/".join(r.full.nodes) if r.full else "",
            ])
        return buffer.getvalue().encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")
