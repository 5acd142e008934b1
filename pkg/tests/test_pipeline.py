import dataclasses
import json

import pytest

from onto_enrich.errors import InternalInvariantError
from onto_enrich.pathfinder import ConnectionRecord, PathResult
from onto_enrich.pipeline import (
    Report,
    RunConfig,
    _check_report,
    run,
    serialize_report,
)

FIXTURE_CONFIG = RunConfig(
    ontology="fixtures/ontology.nt",
    corpus="fixtures/corpus.xml",
    lexicon="fixtures/lexicon.tsv",
)


@pytest.fixture()
def in_repo_root(repo_root, monkeypatch):
    monkeypatch.chdir(repo_root)


@pytest.fixture(scope="module")
def fixture_report(repo_root):
    config = dataclasses.replace(
        FIXTURE_CONFIG,
        ontology=str(repo_root / "fixtures/ontology.nt"),
        corpus=str(repo_root / "fixtures/corpus.xml"),
        lexicon=str(repo_root / "fixtures/lexicon.tsv"),
    )
    return run(config)


class TestRun:
    def test_fixture_record_set(self, fixture_report):
        pairs = [(r.concept_a, r.concept_b) for r in fixture_report.records]
        assert pairs == [
            ("c:Perpendicular", "c:TriangleMiddleLine"),
            ("c:OppositeAnglesOfQuadrilateral", "c:RightAngle"),
            ("c:PythagoreanTheorem", "c:RightTriangle"),
            ("c:Rhombus", "c:Square"),
        ]
        assert [r.optimal for r in fixture_report.records] == [True, True, False, False]

    def test_records_sorted_optimal_first_then_full_length(self, fixture_report):
        lengths = [r.full.length if r.full else None for r in fixture_report.records]
        assert lengths == [3, 4, 1, 3]

    def test_question_ids_aggregated(self, fixture_report):
        by_pair = {(r.concept_a, r.concept_b): r.question_ids for r in fixture_report.records}
        assert by_pair[("c:Rhombus", "c:Square")] == ("q03",)

    def test_match_log_sorted(self, fixture_report):
        keys = [(m.question_id, m.phrase.ordinal) for m in fixture_report.matches]
        assert keys == sorted(keys)
        assert len(fixture_report.matches) == 11

    def test_record_count_equals_distinct_pairs(self, fixture_report):
        from itertools import combinations
        concepts_by_question: dict[str, set[str]] = {}
        for m in fixture_report.matches:
            concepts_by_question.setdefault(m.question_id, set()).add(m.concept_iri)
        pairs = {
            pair
            for concepts in concepts_by_question.values()
            for pair in combinations(sorted(concepts), 2)
        }
        assert pairs == {(r.concept_a, r.concept_b) for r in fixture_report.records}

    def test_golden_report(self, in_repo_root, repo_root):
        payload = serialize_report(run(FIXTURE_CONFIG), "json")
        golden = (repo_root / "tests/golden/fixture_report.json").read_bytes()
        assert payload == golden

    def test_deterministic_across_serial_and_parallel(self, in_repo_root):
        serial = serialize_report(run(FIXTURE_CONFIG), "json")
        parallel = serialize_report(run(FIXTURE_CONFIG, jobs=3), "json")
        assert serial == parallel

    def test_empty_corpus(self, in_repo_root, tmp_path):
        corpus = tmp_path / "empty.xml"
        corpus.write_bytes(b"<corpus></corpus>")
        config = dataclasses.replace(FIXTURE_CONFIG, corpus=str(corpus))
        report = run(config)
        assert report.records == ()
        assert report.matches == ()

    def test_single_match_questions_make_no_records(self, in_repo_root, tmp_path):
        corpus = tmp_path / "sparse.xml"
        corpus.write_bytes(
            b'<corpus><question id="q1"><text>A <TERM1>square</TERM1> here.</text>'
            b"</question>"
            b'<question id="q2"><text>No <TERM1>dodecahedron</TERM1> and no '
            b"<TERM1>icosahedron</TERM1>.</text></question></corpus>")
        config = dataclasses.replace(FIXTURE_CONFIG, corpus=str(corpus))
        report = run(config)
        assert report.records == ()
        assert [m.concept_iri for m in report.matches] == ["c:Square"]

    def test_optimal_only_filter(self, in_repo_root):
        config = dataclasses.replace(FIXTURE_CONFIG, optimal_only=True)
        report = run(config)
        assert len(report.records) == 2
        assert all(r.optimal for r in report.records)

    def test_stoplist_file_matching_default_changes_nothing(self, in_repo_root):
        config = dataclasses.replace(FIXTURE_CONFIG, stoplist="fixtures/stoplist.txt")
        with_file = run(config)
        without = run(FIXTURE_CONFIG)
        assert with_file.records == without.records
        assert with_file.matches == without.matches

    def test_label_lang_filter_keeps_fixture_results(self, in_repo_root):
        config = dataclasses.replace(FIXTURE_CONFIG, label_lang="en")
        report = run(config)
        assert report.records == run(FIXTURE_CONFIG).records

    def test_hierarchical_predicate_override(self, in_repo_root):
        # dropping ome:hasChild cuts the only hierarchy link of the
        # opposite-angles concept: no hierarchical baseline, no optimality
        config = dataclasses.replace(
            FIXTURE_CONFIG, hierarchical_predicates=("rdfs:subClassOf",))
        by_pair = {(r.concept_a, r.concept_b): r for r in run(config).records}
        record = by_pair[("c:OppositeAnglesOfQuadrilateral", "c:RightAngle")]
        assert record.hierarchical is None
        assert record.optimal is False

    def test_max_depth_caps_searches(self, in_repo_root):
        config = dataclasses.replace(FIXTURE_CONFIG, max_depth=3)
        by_pair = {(r.concept_a, r.concept_b): r for r in run(config).records}
        record = by_pair[("c:OppositeAnglesOfQuadrilateral", "c:RightAngle")]
        assert record.hierarchical is None and record.full is None
        assert record.optimal is False

    def test_missing_file_raises_oserror(self, in_repo_root):
        config = dataclasses.replace(FIXTURE_CONFIG, corpus="fixtures/nope.xml")
        with pytest.raises(OSError):
            run(config)


class TestRunConfigValidation:
    def test_bad_depth(self):
        with pytest.raises(ValueError):
            RunConfig(ontology="o", corpus="c", max_depth=0)

    def test_bad_format(self):
        with pytest.raises(ValueError):
            RunConfig(ontology="o", corpus="c", format="xml")


def _record_ab() -> ConnectionRecord:
    return ConnectionRecord(
        "A", "B",
        PathResult(3, ("A", "x", "y", "B"), ("p", "p", "p")),
        PathResult(3, ("A", "u", "v", "B"), ("p", "p", "p")),
        False,
        ("q1",),
    )


class TestSerializeReport:
    def test_csv_row_layout(self, fixture_report):
        report = dataclasses.replace(
            fixture_report, records=(_record_ab(),), matches=(), warnings=())
        lines = serialize_report(report, "csv").decode().splitlines()
        assert lines[0] == "concept_a,concept_b,hier_len,full_len,optimal,questions,hier_path,full_path"
        assert lines[1] == "A,B,3,3,false,q1,A/x/y/B,A/u/v/B"

    def test_csv_empty_cells_for_missing_paths(self, fixture_report):
        record = dataclasses.replace(_record_ab(), hierarchical=None)
        report = dataclasses.replace(
            fixture_report, records=(record,), matches=(), warnings=())
        row = serialize_report(report, "csv").decode().splitlines()[1]
        assert row == "A,B,,3,false,q1,,A/u/v/B"

    def test_empty_report_json(self, in_repo_root, tmp_path):
        corpus = tmp_path / "empty.xml"
        corpus.write_bytes(b"<corpus></corpus>")
        config = dataclasses.replace(FIXTURE_CONFIG, corpus=str(corpus))
        payload = json.loads(serialize_report(run(config), "json"))
        assert payload["records"] == []
        assert payload["config"]["word_threshold"] == 0.75
        assert payload["tool"] == "onto-enrich"

    def test_json_newline_terminated(self, fixture_report):
        assert serialize_report(fixture_report, "json").endswith(b"}\n")

    def test_unknown_format_rejected(self, fixture_report):
        with pytest.raises(ValueError):
            serialize_report(fixture_report, "yaml")


class TestReportInvariants:
    def test_flipped_optimal_flag_detected(self, fixture_report, fixture_graph):
        broken = dataclasses.replace(fixture_report.records[0], optimal=False)
        report = dataclasses.replace(fixture_report, records=(broken,))
        with pytest.raises(InternalInvariantError):
            _check_report(report, fixture_graph)

    def test_unsorted_pair_detected(self, fixture_report, fixture_graph):
        record = fixture_report.records[0]
        swapped = dataclasses.replace(
            record, concept_a=record.concept_b, concept_b=record.concept_a)
        report = dataclasses.replace(fixture_report, records=(swapped,))
        with pytest.raises(InternalInvariantError):
            _check_report(report, fixture_graph)

    def test_empty_question_ids_detected(self, fixture_report, fixture_graph):
        record = dataclasses.replace(fixture_report.records[0], question_ids=())
        report = dataclasses.replace(fixture_report, records=(record,))
        with pytest.raises(InternalInvariantError):
            _check_report(report, fixture_graph)

    def test_fabricated_path_detected(self, fixture_report, fixture_graph):
        record = fixture_report.records[0]
        fake = dataclasses.replace(
            record.full,
            nodes=("c:Perpendicular", "c:Angle", "c:Segment", "c:TriangleMiddleLine"))
        report = dataclasses.replace(
            fixture_report, records=(dataclasses.replace(record, full=fake),))
        with pytest.raises(InternalInvariantError):
            _check_report(report, fixture_graph)
