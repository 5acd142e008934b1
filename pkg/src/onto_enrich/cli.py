"""Command line entry point: ``onto-enrich``.

Writes the report to --out, warnings to stderr, and nothing to stdout.
Exit codes: 0 success, 1 bad input (unreadable or malformed files, bad
flags), 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys

from .errors import InternalInvariantError, OntoEnrichError
from .matcher import MatchConfig
from .pipeline import OUTPUT_FORMATS, RunConfig, run, serialize_report


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors: exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _threshold(value: str) -> float:
    number = float(value)
    if not 0.0 <= number <= 1.0:
        raise argparse.ArgumentTypeError(f"{value} is not within [0, 1]")
    return number


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"{value} is not a positive integer")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="onto-enrich",
        description=(
            "Discover candidate ontology relations by matching marked phrases in a "
            "question corpus to concepts and comparing hierarchical-only against "
            "all-relation shortest paths."
        ),
    )
    parser.add_argument("--ontology", required=True, help="triple file with concepts and relations")
    parser.add_argument("--corpus", required=True, help="XML question corpus with TERM1/TERM2 markup")
    parser.add_argument("--lexicon", help="TSV surface->lemma dictionary (default: identity)")
    parser.add_argument("--stoplist", help="one stop form per line (default: built-in English list)")
    parser.add_argument("--word-threshold", type=_threshold, default=0.75,
                        help="min char Jaccard for two words to pair (default 0.75)")
    parser.add_argument("--seq-threshold", type=_threshold, default=0.5,
                        help="min sequence score for a phrase to match (default 0.5)")
    parser.add_argument("--max-depth", type=_positive_int, default=6,
                        help="path search depth cap in edges (default 6)")
    parser.add_argument("--label-lang", help="keep only labels with this language tag")
    parser.add_argument("--hierarchical-predicate", action="append", metavar="IRI",
                        help="hierarchy predicate; repeatable "
                             "(default rdfs:subClassOf and ome:hasChild)")
    parser.add_argument("--label-predicate", action="append", metavar="IRI",
                        help="label predicate; repeatable (default rdfs:label)")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="json")
    parser.add_argument("--optimal-only", action="store_true",
                        help="report only pairs with a strictly shorter full path")
    parser.add_argument("--jobs", type=_positive_int, default=1,
                        help="worker threads for matching and path search (default 1)")
    parser.add_argument("--out", required=True, help="report output file")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            ontology=args.ontology,
            corpus=args.corpus,
            lexicon=args.lexicon,
            stoplist=args.stoplist,
            match=MatchConfig(args.word_threshold, args.seq_threshold),
            max_depth=args.max_depth,
            label_predicates=_predicates(args.label_predicate, ("rdfs:label",)),
            hierarchical_predicates=_predicates(
                args.hierarchical_predicate, ("ome:hasChild", "rdfs:subClassOf")),
            label_lang=args.label_lang,
            format=args.format,
            optimal_only=args.optimal_only,
            out=args.out,
        )
        report = run(config, jobs=args.jobs)
        payload = serialize_report(report, config.format)
        with open(args.out, "wb") as handle:
            handle.write(payload)
    except InternalInvariantError as exc:
        print(f"onto-enrich: internal error: {exc}", file=sys.stderr)
        return 2
    except (OntoEnrichError, OSError, ValueError) as exc:
        print(f"onto-enrich: error: {exc}", file=sys.stderr)
        return 1
    for warning in report.warnings:
        print(f"onto-enrich: warning: {warning}", file=sys.stderr)
    return 0


def _predicates(given: list[str] | None, default: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(given) if given else default


if __name__ == "__main__":
    sys.exit(main())
