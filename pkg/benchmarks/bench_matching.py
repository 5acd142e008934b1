#!/usr/bin/env python3
"""Benchmark the numba kernel against the numpy fallback on synthetic data.

Builds a synthetic label index and phrase set shaped like a real deployment
(hundreds of concepts, thousands of phrases) and times the batch scorer on
both backends. The jit path is warmed before timing so compilation cost does
not pollute the numbers.

Usage: python benchmarks/bench_matching.py [--entries N] [--phrases N]
"""

import argparse
import random
import time

from onto_enrich import _scoring

VOCABULARY = [
    "triangle", "quadrilateral", "perpendicular", "segment", "middle", "line",
    "angle", "right", "circle", "diameter", "chord", "vertex", "polygon",
    "bisector", "median", "height", "diagonal", "point", "rotation", "axis",
]


def synthetic_sequences(rng, count, max_len):
    return [
        tuple(rng.choice(VOCABULARY) for _ in range(rng.randint(1, max_len)))
        for _ in range(count)
    ]


def run_backend(name, scorer, phrases, index, threshold):
    started = time.perf_counter()
    checksum = 0
    for q_cp, q_off in phrases:
        m, _ = scorer(q_cp, q_off, index, threshold)
        checksum += int(m.sum())
    elapsed = time.perf_counter() - started
    print(f"{name:>6}: {elapsed:8.3f} s   (checksum {checksum})")
    return elapsed, checksum


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--entries", type=int, default=1000, help="index size")
    parser.add_argument("--phrases", type=int, default=2000, help="phrase count")
    parser.add_argument("--word-threshold", type=float, default=0.75)
    args = parser.parse_args()

    rng = random.Random(1)
    index = _scoring.ScoringIndex(synthetic_sequences(rng, args.entries, 4))
    phrases = [_scoring.encode_sequence(seq)
               for seq in synthetic_sequences(rng, args.phrases, 5)]
    print(f"{args.entries} index entries x {args.phrases} phrases, "
          f"word threshold {args.word_threshold}")

    def numpy_scorer(q_cp, q_off, idx, threshold):
        return _scoring.greedy_counts_numpy(q_cp, q_off, idx, threshold)

    results = {}
    results["numpy"] = run_backend(
        "numpy", numpy_scorer, phrases, index, args.word_threshold)

    if _scoring._greedy_counts_jit is None:
        print(" numba: unavailable (not installed or disabled via "
              f"{_scoring.ENV_FLAG}=0)")
        return

    def numba_scorer(q_cp, q_off, idx, threshold):
        return _scoring._greedy_counts_jit(
            q_cp, q_off, idx.cp, idx.cp_off, idx.lem_off, threshold)

    numba_scorer(*phrases[0], index, args.word_threshold)  # warm the jit
    results["numba"] = run_backend(
        "numba", numba_scorer, phrases, index, args.word_threshold)

    assert results["numpy"][1] == results["numba"][1], "backends disagree"
    speedup = results["numpy"][0] / results["numba"][0]
    print(f"speedup: {speedup:.1f}x (numba over numpy)")


if __name__ == "__main__":
    main()
