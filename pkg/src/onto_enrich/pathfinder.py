"""Shortest connections between matched concepts, hierarchical vs. full.

Both searches are breadth-first over undirected edges (hierarchy links are
climbed in either direction), capped at a maximum depth. A concept pair is
an "optimal connection" when the shortest path over every relation type is
strictly shorter than the shortest hierarchical-only path — the signal that
a direct cross-relation is worth proposing to the ontology experts.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .errors import UnknownConceptError
from .matcher import ConceptMatch
from .ontology import OntologyGraph

DEFAULT_MAX_DEPTH = 6


class EdgeFilter(enum.Enum):
    HIERARCHICAL = "hierarchical"  # admits only the graph's hierarchy predicates
    ALL = "all"                    # admits every edge


@dataclass(frozen=True)
class PathResult:
    """A concrete path: length in edges, node chain, predicate chain."""

    length: int
    nodes: tuple[str, ...]
    predicates: tuple[str, ...]


@dataclass(frozen=True)
class ConnectionRecord:
    """Hierarchical and full shortest paths for one concept pair.

    ``concept_a`` sorts before ``concept_b``; ``optimal`` is set exactly when
    both paths exist and the full path is strictly shorter.
    """

    concept_a: str
    concept_b: str
    hierarchical: PathResult | None
    full: PathResult | None
    optimal: bool
    question_ids: tuple[str, ...]


def shortest_path(
    graph: OntologyGraph,
    src: str,
    dst: str,
    edge_filter: EdgeFilter,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> PathResult | None:
    """BFS shortest path of length <= max_depth, or None if out of reach.

    Edges are traversed as undirected. Among equal-length paths the result
    is the one BFS reaches first when every node expands its neighbors in
    ascending (neighbor iri, predicate iri) order, which pins the output
    byte-for-byte across runs.
    """
    if src not in graph.concepts:
        raise UnknownConceptError(f"unknown concept <{src}>")
    if dst not in graph.concepts:
        raise UnknownConceptError(f"unknown concept <{dst}>")
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    if src == dst:
        return PathResult(0, (src,), ())

    hier = edge_filter is EdgeFilter.HIERARCHICAL
    came_from: dict[str, tuple[str, str]] = {src: ("", "")}
    frontier = [src]
    for _ in range(max_depth):
        next_frontier: list[str] = []
        for node in frontier:
            for neighbor, predicate in graph.neighbors(node, hierarchical_only=hier):
                if neighbor in came_from:
                    continue
                came_from[neighbor] = (node, predicate)
                if neighbor == dst:
                    return _reconstruct(came_from, src, dst)
                next_frontier.append(neighbor)
        if not next_frontier:
            return None
        frontier = next_frontier
    return None


def _reconstruct(came_from: dict[str, tuple[str, str]], src: str, dst: str) -> PathResult:
    nodes = [dst]
    predicates = []
    node = dst
    while node != src:
        node, predicate = came_from[node]
        nodes.append(node)
        predicates.append(predicate)
    nodes.reverse()
    predicates.reverse()
    return PathResult(len(predicates), tuple(nodes), tuple(predicates))


def enumerate_pairs(matches: list[ConceptMatch]) -> list[tuple[str, str, str]]:
    """All unordered concept pairs co-occurring in one question's matches.

    Pairs come out as (smaller iri, larger iri, question id); fewer than two
    distinct concepts yield nothing.
    """
    if not matches:
        return []
    question_id = matches[0].question_id
    iris = sorted({m.concept_iri for m in matches})
    return [(a, b, question_id) for a, b in itertools.combinations(iris, 2)]


def compare(
    graph: OntologyGraph,
    pair: tuple[str, str],
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> ConnectionRecord:
    """Run both searches for one pair and flag optimality.

    ``question_ids`` is left empty here; the pipeline fills it while
    aggregating pairs across questions.
    """
    concept_a, concept_b = sorted(pair)
    hierarchical = shortest_path(graph, concept_a, concept_b, EdgeFilter.HIERARCHICAL, max_depth)
    full = shortest_path(graph, concept_a, concept_b, EdgeFilter.ALL, max_depth)
    optimal = (
        hierarchical is not None
        and full is not None
        and full.length < hierarchical.length
    )
    return ConnectionRecord(concept_a, concept_b, hierarchical, full, optimal, ())
