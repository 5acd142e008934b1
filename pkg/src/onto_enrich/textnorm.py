"""Tokenization and dictionary-based lemmatization.

Phrases and concept labels go through the same pipeline: split into
alphanumeric tokens, case-fold, map each token through a lexicon (identity
fallback for unknown surfaces), then drop stoplisted lemma forms. The result
is a ``LemmaSequence`` — a tuple of lemma strings — which is what the matcher
compares.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from .errors import MalformedLexiconLineError

# A lemma sequence is an ordered tuple of case-folded lemma forms.
LemmaSequence = tuple[str, ...]

# Maximal runs of Unicode alphanumerics; everything else (hyphens,
# apostrophes, punctuation, whitespace) separates tokens.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Split ``text`` into case-folded alphanumeric tokens, order preserved.

    >>> tokenize("Triangle's mid-line")
    ['triangle', 's', 'mid', 'line']
    """
    return [m.group().casefold() for m in _TOKEN_RE.finditer(text)]


@dataclass(frozen=True)
class Lexicon:
    """Surface-form to lemma dictionary with identity fallback.

    Keys and values are case-folded at load time; lookup never fails — a
    surface absent from the map lemmatizes to itself.
    """

    entries: Mapping[str, str] = field(default_factory=dict)

    def lemma(self, surface: str) -> str:
        return self.entries.get(surface, surface)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Stoplist:
    """Set of case-folded lemma forms excluded from matching."""

    forms: frozenset[str] = frozenset()

    def __contains__(self, form: str) -> bool:
        return form in self.forms

    def __len__(self) -> int:
        return len(self.forms)


# Small default stoplist: function words that would otherwise dominate
# prepositional phrases. Deployments pass their own file to override.
DEFAULT_STOPLIST = Stoplist(frozenset({
    "a", "an", "the",
    "of", "to", "in", "on", "at", "by", "for", "with", "from",
    "up", "down", "over", "under", "after", "before", "between",
    "and", "or", "is", "are", "be",
}))


def lemmatize(token: str, lexicon: Lexicon) -> str:
    """Normal form of ``token``: the lexicon entry, or the token itself."""
    return lexicon.lemma(token)


def normalize_phrase(text: str, lexicon: Lexicon, stoplist: Stoplist) -> LemmaSequence:
    """Tokenize, lemmatize, then drop stoplisted lemma forms.

    The stoplist applies to lemma forms (after lemmatization), so one entry
    covers a whole word family. May return an empty tuple when every token is
    stoplisted; callers exclude such sequences from matching.
    """
    return tuple(
        lemma
        for token in tokenize(text)
        if (lemma := lexicon.lemma(token)) not in stoplist
    )


def load_lexicon(data: bytes) -> Lexicon:
    """Parse a lexicon file: UTF-8 TSV, ``surface<TAB>lemma`` per line.

    Blank lines and lines starting with ``#`` are skipped. Later duplicate
    surfaces override earlier ones. Raises MalformedLexiconLineError with the
    1-based line number on anything else.
    """
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(data.decode("utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) != 2:
            raise MalformedLexiconLineError(
                f"expected 'surface<TAB>lemma', got {raw!r}", lineno)
        surface, lemma = (f.strip() for f in fields)
        if not surface or not lemma:
            raise MalformedLexiconLineError(
                f"empty surface or lemma in {raw!r}", lineno)
        entries[surface.casefold()] = lemma.casefold()
    return Lexicon(entries)


def load_stoplist(data: bytes) -> Stoplist:
    """Parse a stoplist file: UTF-8, one form per line, ``#`` comments."""
    forms = set()
    for raw in data.decode("utf-8").splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            forms.add(line.casefold())
    return Stoplist(frozenset(forms))
