"""Ontology enrichment from marked-up question corpora.

Marked noun and prepositional phrases in test questions are linked to
ontology concepts through a two-level fuzzy Jaccard match; concept pairs
co-occurring in a question are then compared on hierarchical-only versus
all-relation shortest paths, and pairs whose full path is strictly shorter
surface as candidate new relations for expert review.
"""

__version__ = "0.1.0"

from .corpus import (
    Answer,
    AnswerKind,
    MarkedPhrase,
    MarkedText,
    PhraseKind,
    PhraseSource,
    Question,
    QuestionCorpus,
    TextSpan,
    extract_phrases,
    parse_corpus,
    serialize_corpus,
)
from .errors import (
    DuplicateQuestionIdError,
    EmptySequenceError,
    InternalInvariantError,
    MalformedLexiconLineError,
    MalformedTripleError,
    MalformedXmlError,
    MissingQuestionIdError,
    OntoEnrichError,
    SelfLoopEdgeError,
    UnknownConceptError,
    UnterminatedLiteralError,
)
from .matcher import (
    CompiledLabelIndex,
    ConceptMatch,
    MatchConfig,
    char_jaccard,
    match_phrase,
    match_question,
    seq_similarity,
)
from .ontology import (
    Concept,
    IndexEntry,
    Label,
    LabelIndex,
    Literal,
    OntologyGraph,
    RelationEdge,
    build_graph,
    build_label_index,
    parse_triples,
)
from .pathfinder import (
    ConnectionRecord,
    EdgeFilter,
    PathResult,
    compare,
    enumerate_pairs,
    shortest_path,
)
from .pipeline import Report, RunConfig, run, serialize_report
from .textnorm import (
    Lexicon,
    Stoplist,
    lemmatize,
    load_lexicon,
    load_stoplist,
    normalize_phrase,
    tokenize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
