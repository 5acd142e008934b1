"""Batch kernels for phrase-against-index fuzzy scoring.

Matching a phrase means greedily pairing its lemmas with every label's
lemmas at character-set granularity, for every entry of the label index.
That inner loop dominates runtime on real ontologies, so it is packed into
flat codepoint arrays and run through one of two interchangeable backends:

* ``numba`` — an ``@njit`` kernel over the packed arrays (default when
  numba imports);
* ``numpy`` — a vectorized fallback that builds a character-incidence
  matrix and gets all pairwise intersection counts from one matmul.

Set ``ONTO_ENRICH_NUMBA=0`` to force the numpy path. Both backends produce
bit-identical (matched count, denominator) pairs; see
benchmarks/bench_matching.py for a speed comparison.
"""

from __future__ import annotations

import os

import numpy as np

ENV_FLAG = "ONTO_ENRICH_NUMBA"


def _env_allows_numba() -> bool:
    return os.environ.get(ENV_FLAG, "1").strip().lower() not in ("0", "false", "no", "off")


def encode_sequence(lemmas: tuple[str, ...]) -> tuple[np.ndarray, np.ndarray]:
    """Pack one lemma sequence: sorted distinct codepoints per lemma, flat.

    Returns (codepoints int32, offsets int64) with ``offsets[i]:offsets[i+1]``
    slicing lemma ``i``.
    """
    offsets = np.zeros(len(lemmas) + 1, dtype=np.int64)
    chunks = []
    for i, lemma in enumerate(lemmas):
        cps = sorted({ord(c) for c in lemma})
        chunks.extend(cps)
        offsets[i + 1] = len(chunks)
    return np.asarray(chunks, dtype=np.int32), offsets


def _greedy_counts_loops(q_cp, q_off, e_cp, e_cp_off, e_lem_off, word_threshold):
    """Greedy fuzzy-match counts of one phrase against every index entry.

    Phrase lemmas are taken in order; each pairs with the unused entry lemma
    of maximal character Jaccard among those clearing ``word_threshold``,
    earliest position winning ties. Returns per-entry arrays (m, d): matched
    pair count and |A| + |B| - m.
    """
    n_entries = e_lem_off.size - 1
    m_out = np.zeros(n_entries, dtype=np.int64)
    d_out = np.zeros(n_entries, dtype=np.int64)
    na = q_off.size - 1
    for j in range(n_entries):
        lem_lo = e_lem_off[j]
        nb = e_lem_off[j + 1] - lem_lo
        taken = np.zeros(nb, dtype=np.bool_)
        m = 0
        for i in range(na):
            a_lo = q_off[i]
            a_hi = q_off[i + 1]
            best_k = -1
            best_cj = -1.0
            for k in range(nb):
                if taken[k]:
                    continue
                b_lo = e_cp_off[lem_lo + k]
                b_hi = e_cp_off[lem_lo + k + 1]
                inter = 0
                x = a_lo
                y = b_lo
                while x < a_hi and y < b_hi:
                    if q_cp[x] == e_cp[y]:
                        inter += 1
                        x += 1
                        y += 1
                    elif q_cp[x] < e_cp[y]:
                        x += 1
                    else:
                        y += 1
                union = (a_hi - a_lo) + (b_hi - b_lo) - inter
                cj = 1.0 if union == 0 else inter / union
                if cj >= word_threshold and cj > best_cj:
                    best_cj = cj
                    best_k = k
            if best_k >= 0:
                taken[best_k] = True
                m += 1
        m_out[j] = m
        d_out[j] = na + nb - m
    return m_out, d_out


if _env_allows_numba():
    try:
        from numba import njit
        _greedy_counts_jit = njit(cache=True, nogil=True)(_greedy_counts_loops)
        BACKEND = "numba"
    except ImportError:
        _greedy_counts_jit = None
        BACKEND = "numpy"
else:
    _greedy_counts_jit = None
    BACKEND = "numpy"


class ScoringIndex:
    """Label index packed for batch scoring; shared by both backends."""

    def __init__(self, sequences: list[tuple[str, ...]]):
        cp_chunks: list[int] = []
        cp_off = [0]
        lem_off = [0]
        for seq in sequences:
            for lemma in seq:
                cp_chunks.extend(sorted({ord(c) for c in lemma}))
                cp_off.append(len(cp_chunks))
            lem_off.append(len(cp_off) - 1)
        self.cp = np.asarray(cp_chunks, dtype=np.int32)
        self.cp_off = np.asarray(cp_off, dtype=np.int64)
        self.lem_off = np.asarray(lem_off, dtype=np.int64)
        self.n_entries = len(sequences)
        self.n_lemmas = len(cp_off) - 1
        self._numpy_pack: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None

    def numpy_pack(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(alphabet, incidence matrix, lemma set sizes) for the numpy path."""
        if self._numpy_pack is None:
            alphabet = np.unique(self.cp)
            mat = np.zeros((self.n_lemmas, alphabet.size), dtype=np.int64)
            sizes = np.diff(self.cp_off)
            for i in range(self.n_lemmas):
                cps = self.cp[self.cp_off[i]:self.cp_off[i + 1]]
                mat[i, np.searchsorted(alphabet, cps)] = 1
            self._numpy_pack = (alphabet, mat, sizes)
        return self._numpy_pack


def greedy_counts_numpy(q_cp, q_off, index: ScoringIndex, word_threshold: float):
    """Numpy fallback: same contract and results as the jitted kernel."""
    alphabet, emat, b_sizes = index.numpy_pack()
    na = q_off.size - 1
    pmat = np.zeros((na, alphabet.size), dtype=np.int64)
    a_sizes = np.diff(q_off)
    for i in range(na):
        cps = q_cp[q_off[i]:q_off[i + 1]]
        pos = np.searchsorted(alphabet, cps)
        # codepoints absent from the index alphabet intersect nothing
        inside = (pos < alphabet.size)
        pos = pos[inside]
        hit = alphabet[pos] == cps[inside]
        pmat[i, pos[hit]] = 1
    inter = pmat @ emat.T  # (na, n_lemmas) pairwise intersection sizes
    union = a_sizes[:, None] + b_sizes[None, :] - inter
    with np.errstate(invalid="ignore"):
        cj = np.where(union > 0, inter / np.where(union > 0, union, 1), 1.0)

    m_out = np.zeros(index.n_entries, dtype=np.int64)
    d_out = np.zeros(index.n_entries, dtype=np.int64)
    lem_off = index.lem_off
    for j in range(index.n_entries):
        lem_lo = int(lem_off[j])
        nb = int(lem_off[j + 1]) - lem_lo
        taken = [False] * nb
        m = 0
        for i in range(na):
            best_k = -1
            best_cj = -1.0
            row = cj[i]
            for k in range(nb):
                if taken[k]:
                    continue
                v = row[lem_lo + k]
                if v >= word_threshold and v > best_cj:
                    best_cj = v
                    best_k = k
            if best_k >= 0:
                taken[best_k] = True
                m += 1
        m_out[j] = m
        d_out[j] = na + nb - m
    return m_out, d_out


def score_counts(q_cp, q_off, index: ScoringIndex, word_threshold: float):
    """Dispatch to the active backend; floats never leave this as scores."""
    if _greedy_counts_jit is not None:
        return _greedy_counts_jit(
            q_cp, q_off, index.cp, index.cp_off, index.lem_off, word_threshold)
    return greedy_counts_numpy(q_cp, q_off, index, word_threshold)
