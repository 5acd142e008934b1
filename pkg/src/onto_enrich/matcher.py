"""Two-level fuzzy matching of marked phrases to ontology concepts.

Word level: Jaccard overlap of the distinct characters of two lemmas,
deciding whether two words count as the same once it clears a threshold.
Sequence level: phrase lemmas greedily pair with label lemmas, and the pair
count m scores the sequences as m / (|A| + |B| - m). A phrase maps to the
single best-scoring concept label at or above the sequence threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _scoring
from .corpus import MarkedPhrase, Question
from .errors import EmptySequenceError
from .ontology import IndexEntry, LabelIndex
from .textnorm import LemmaSequence, Lexicon, Stoplist, normalize_phrase


@dataclass(frozen=True)
class MatchConfig:
    """Similarity thresholds, both in [0, 1].

    word_threshold: minimum character Jaccard for two words to pair up.
    seq_threshold: minimum sequence score for a phrase to match a label.
    """

    word_threshold: float = 0.75
    seq_threshold: float = 0.5

    def __post_init__(self):
        for name in ("word_threshold", "seq_threshold"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be within [0, 1], got {value}")


@dataclass(frozen=True)
class ConceptMatch:
    """A phrase linked to the concept whose label it matched best."""

    question_id: str
    phrase: MarkedPhrase
    concept_iri: str
    matched_label: str
    score: float


def char_jaccard(a: str, b: str) -> float:
    """Jaccard coefficient of the distinct-character sets of two lemmas.

    1.0 when both are empty; 0.0 when the alphabets are disjoint.
    """
    sa = set(a)
    sb = set(b)
    if not sa and not sb:
        return 1.0
    return len(sa & sb) / len(sa | sb)


def seq_similarity(a: LemmaSequence, b: LemmaSequence, word_threshold: float) -> float:
    """Greedy fuzzy-overlap score of two non-empty lemma sequences.

    Tokens of ``a`` are taken in order; each pairs with the not-yet-paired
    token of ``b`` of maximal char_jaccard among those >= word_threshold
    (ties resolve to the earliest position in ``b``). With m matched pairs
    the score is m / (|a| + |b| - m).
    """
    if not a or not b:
        raise EmptySequenceError("seq_similarity requires non-empty sequences")
    taken = [False] * len(b)
    m = 0
    for ta in a:
        best_k = -1
        best_cj = -1.0
        for k, tb in enumerate(b):
            if taken[k]:
                continue
            cj = char_jaccard(ta, tb)
            if cj >= word_threshold and cj > best_cj:
                best_cj = cj
                best_k = k
        if best_k >= 0:
            taken[best_k] = True
            m += 1
    return m / (len(a) + len(b) - m)


class CompiledLabelIndex:
    """A LabelIndex packed once for batch scoring of many phrases."""

    def __init__(self, index: LabelIndex):
        self.entries: tuple[IndexEntry, ...] = index.entries
        self.scoring = _scoring.ScoringIndex([e.lemmas for e in index.entries])

    @classmethod
    def compile(cls, index: "LabelIndex | CompiledLabelIndex") -> "CompiledLabelIndex":
        if isinstance(index, CompiledLabelIndex):
            return index
        return cls(index)


def match_phrase(
    phrase: MarkedPhrase,
    seq: LemmaSequence,
    index: LabelIndex | CompiledLabelIndex,
    config: MatchConfig,
) -> ConceptMatch | None:
    """Best concept for one normalized phrase, or None below threshold.

    Ties on score fall to the shorter label lemma sequence, then the smaller
    concept IRI, then the smaller original label, so results are stable.
    """
    if not seq:
        raise EmptySequenceError(f"phrase {phrase.raw!r} normalized to nothing")
    compiled = CompiledLabelIndex.compile(index)
    if not compiled.entries:
        return None
    q_cp, q_off = _scoring.encode_sequence(seq)
    m_arr, d_arr = _scoring.score_counts(q_cp, q_off, compiled.scoring, config.word_threshold)

    best = -1
    best_m = 0
    best_d = 1
    for j, entry in enumerate(compiled.entries):
        m = int(m_arr[j])
        d = int(d_arr[j])
        if m / d < config.seq_threshold:
            continue
        if best >= 0:
            # exact fraction comparison: m/d vs best_m/best_d
            lhs = m * best_d
            rhs = best_m * d
            if lhs < rhs:
                continue
            if lhs == rhs:
                prev = compiled.entries[best]
                if (len(entry.lemmas), entry.iri, entry.label) >= (
                        len(prev.lemmas), prev.iri, prev.label):
                    continue
        best = j
        best_m = m
        best_d = d
    if best < 0:
        return None
    chosen = compiled.entries[best]
    return ConceptMatch(
        phrase.question_id, phrase, chosen.iri, chosen.label, best_m / best_d)


def match_question(
    question: Question,
    phrases: list[MarkedPhrase],
    index: LabelIndex | CompiledLabelIndex,
    lexicon: Lexicon,
    stoplist: Stoplist,
    config: MatchConfig,
) -> list[ConceptMatch]:
    """Match every phrase of one question, collapsing duplicate concepts.

    Phrases normalizing to an empty sequence are skipped without a match
    attempt. When several phrases hit the same concept only the highest
    score survives (earliest phrase on ties); results keep phrase order.
    """
    compiled = CompiledLabelIndex.compile(index)
    by_concept: dict[str, ConceptMatch] = {}
    for phrase in phrases:
        seq = normalize_phrase(phrase.raw, lexicon, stoplist)
        if not seq:
            continue
        match = match_phrase(phrase, seq, compiled, config)
        if match is None:
            continue
        held = by_concept.get(match.concept_iri)
        if held is None or match.score > held.score:
            by_concept[match.concept_iri] = match
    return sorted(by_concept.values(), key=lambda m: m.phrase.ordinal)
